"""Scalars over the three supported fields.

The ground field is a construction-time choice: exact rationals
(:class:`fractions.Fraction`), 64-bit reals or complexes. Matrices and
vectors store plain Python numbers and carry a :class:`FieldTag`;
:class:`Scalar` is the tagged value handed across the public API
(classification parameters, CLI flags).

This module also holds the tolerances every other module uses, so a
verify report can print them from one place.
"""

import cmath
import math
import numbers
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Any
from typing import Iterable
from typing import Union

from evolgebra.errors import BackendMismatchError
from evolgebra.errors import BranchError
from evolgebra.errors import DomainError
from evolgebra.errors import UnsupportedBackendError


Number = Union[Fraction, float, complex]

# TOLERANCES

#: Structural entries at or below this are zero in float fields.
ZERO_TOL = 1e-12
#: Entries between ZERO_TOL and this flip the classification too easily.
NEAR_ZERO_WARN = 1e-6
#: Row reduction pivot threshold, relative to the largest entry.
PIVOT_TOL = 1e-10
#: Leibniz, multiplicativity and root-of-unity checks.
CHECK_TOL = 1e-10
#: Slack allowed in the submultiplicativity inequality.
SUBMULT_SLACK = 1e-12
#: Default entrywise tolerance for exp(Der(E)) membership.
MEMBERSHIP_TOL = 1e-9
#: Below this |alpha| the beta-prime factor uses its Taylor expansion.
TAYLOR_CUTOFF = 1e-8
#: Hard cap on exponential series terms.
SERIES_MAX_TERMS = 500

TOLERANCES = {
    "zero_tol": ZERO_TOL,
    "near_zero_warn": NEAR_ZERO_WARN,
    "pivot_tol": PIVOT_TOL,
    "check_tol": CHECK_TOL,
    "submult_slack": SUBMULT_SLACK,
    "membership_tol": MEMBERSHIP_TOL,
    "taylor_cutoff": TAYLOR_CUTOFF,
    "series_max_terms": SERIES_MAX_TERMS,
}

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_LONE_I_RE = re.compile(r"(^|[+-])i$")


class FieldTag(str, Enum):
    """Which field the scalars of an object live in."""

    RATIONAL = "rational"
    REAL = "real"
    COMPLEX = "complex"

    @property
    def is_exact(self) -> bool:
        """Only rational arithmetic is exact."""
        return self is FieldTag.RATIONAL

    @property
    def zero(self) -> Number:
        """Additive identity in this field."""
        return self.coerce(0)

    @property
    def one(self) -> Number:
        """Multiplicative identity in this field."""
        return self.coerce(1)

    def coerce(self, value: Any) -> Number:
        """Bring a plain number into this field.

        Integers belong to every field. Otherwise the value must already
        be of the field's type: a float is never silently made rational
        and a Fraction never silently becomes a float.

        Raises:
            BackendMismatchError: The value belongs to another backend.
        """
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, numbers.Integral):
            value = int(value)
            if self is FieldTag.RATIONAL:
                return Fraction(value)
            if self is FieldTag.REAL:
                return float(value)
            return complex(value)

        if self is FieldTag.RATIONAL:
            if isinstance(value, Fraction):
                return value
        elif self is FieldTag.REAL:
            if isinstance(value, float):
                return float(value)
        else:
            if isinstance(value, (float, complex)):
                return complex(value)

        raise BackendMismatchError(
            f"{type(value).__name__} value {value!r} does not belong to the "
            f"{self.value} backend"
        )

    def promote(self, value: Number) -> Number:
        """Convert a value of a narrower field into this one.

        Rationals embed into the reals and complexes, reals into the
        complexes. Narrowing is refused.
        """
        if isinstance(value, Fraction) and self is not FieldTag.RATIONAL:
            value = float(value)
        if isinstance(value, float) and self is FieldTag.COMPLEX:
            value = complex(value)
        return self.coerce(value)

    def parse(self, text: str) -> Number:
        """Parse the text encoding of a scalar.

        Rationals are ``p/q`` or ``p``, reals are decimal literals and
        complexes are ``a+bi`` or ``a-bi`` (a bare real is accepted too).

        Raises:
            DomainError: The text is not a scalar of this field.
        """
        text = text.strip()
        if "_" in text:
            raise DomainError(f"'{text}' uses digit separators")
        if self is FieldTag.RATIONAL:
            if not _RATIONAL_RE.match(text):
                raise DomainError(f"'{text}' is not a rational literal (p/q or p)")
            try:
                return Fraction(text)
            except ZeroDivisionError:
                raise DomainError(f"'{text}' has a zero denominator") from None

        if self is FieldTag.REAL:
            try:
                value = float(text)
            except ValueError:
                raise DomainError(f"'{text}' is not a real literal") from None
            if not math.isfinite(value):
                raise DomainError(f"'{text}' is not a finite real")
            return value

        normalized = _LONE_I_RE.sub(r"\g<1>1i", text.replace(" ", ""))
        try:
            value = complex(normalized.replace("i", "j"))
        except ValueError:
            raise DomainError(f"'{text}' is not a complex literal (a+bi)") from None
        if not cmath.isfinite(value):
            raise DomainError(f"'{text}' is not a finite complex")
        return value

    def format(self, value: Number) -> str:
        """Text encoding of a value, inverse of :meth:`parse`."""
        value = self.coerce(value)
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, float):
            return repr(value)
        sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
        return f"{value.real!r}{sign}{abs(value.imag)!r}i"


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its backend.

    Rationals are kept in lowest terms with a positive denominator, which
    :class:`fractions.Fraction` guarantees. Arithmetic between scalars of
    different backends raises :class:`BackendMismatchError`; plain
    integers mix with anything.
    """

    field: FieldTag
    value: Number

    def __post_init__(self) -> None:
        """Coerce the payload into the tagged field."""
        object.__setattr__(self, "value", self.field.coerce(self.value))

    @classmethod
    def parse(cls, text: str, field: FieldTag) -> "Scalar":
        """Build a scalar from its text encoding."""
        return cls(field, field.parse(text))

    def _other(self, other: Any) -> Number:
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise BackendMismatchError(
                    f"cannot combine {self.field.value} and {other.field.value} scalars"
                )
            return other.value
        return self.field.coerce(other)

    def __add__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value - self._other(other))

    def __rsub__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self._other(other) - self.value)

    def __mul__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Scalar":
        divisor = self._other(other)
        if divisor == 0:
            raise DomainError("division by zero")
        return Scalar(self.field, self.value / divisor)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def __pow__(self, k: int) -> "Scalar":
        return scalar_pow_int(self, k)

    def __abs__(self) -> Number:
        return abs(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.field.format(self.value)


def scalar_pow_int(x: Scalar, k: int) -> Scalar:
    """Raise a scalar to a nonnegative integer power by repeated squaring.

    >>> str(scalar_pow_int(Scalar(FieldTag.RATIONAL, 2), 3))
    '8'
    """
    if k < 0:
        raise DomainError(f"exponent must be nonnegative, got {k}")
    result = x.field.one
    base = x.value
    while k:
        if k & 1:
            result *= base
        base *= base
        k >>= 1
    return Scalar(x.field, result)


def scalar_exp(x: Scalar) -> Scalar:
    """The exponential of a real or complex scalar.

    Raises:
        UnsupportedBackendError: For rational input.
        DomainError: The result overflows a float.
    """
    if x.field is FieldTag.RATIONAL:
        raise UnsupportedBackendError("exp is not available in the rational backend")
    try:
        if x.field is FieldTag.REAL:
            return Scalar(x.field, math.exp(x.value))
        return Scalar(x.field, cmath.exp(x.value))
    except OverflowError:
        raise DomainError(f"exp({x}) overflows") from None


def scalar_log(x: Scalar) -> Scalar:
    """Principal natural logarithm of a real or complex scalar.

    Raises:
        UnsupportedBackendError: For rational input.
        BranchError: Zero, or a nonpositive real.
    """
    if x.field is FieldTag.RATIONAL:
        raise UnsupportedBackendError("log is not available in the rational backend")
    if x.value == 0:
        raise BranchError("log of zero")
    if x.field is FieldTag.REAL:
        if x.value < 0:
            raise BranchError(f"a negative real ({x.value!r}) has no real logarithm")
        return Scalar(x.field, math.log(x.value))
    return Scalar(x.field, cmath.log(x.value))


def gcd_int(values: Iterable[int]) -> int:
    """Positive greatest common divisor of nonzero integers.

    >>> gcd_int([12, 18, 30])
    6
    """
    values = [int(v) for v in values]
    if not values:
        raise DomainError("gcd of an empty list")
    if any(v == 0 for v in values):
        raise DomainError("gcd_int takes nonzero integers")
    return reduce(math.gcd, (abs(v) for v in values))


def is_zero(value: Number, field: FieldTag, tol: float = ZERO_TOL) -> bool:
    """Exact zero test for rationals, ``|value| <= tol`` otherwise."""
    if field.is_exact:
        return value == 0
    return abs(value) <= tol


def close(
    a: Number, b: Number, field: FieldTag, tol: float, scale: float = 1.0
) -> bool:
    """Compare two values: exactly for rationals, else within ``tol * scale``.

    ``scale`` is floored at 1 so small values get an absolute tolerance
    and large ones a relative one.
    """
    if field.is_exact:
        return a == b
    return abs(a - b) <= tol * max(1.0, float(scale))
