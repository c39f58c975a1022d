"""The exponential group exp(Der(E)) and the 2x2 groups it maps onto.

Derivations of the classified algebras exponentiate in closed form, which
:func:`exp_derivation_closed` implements and :func:`exp_series` checks by
summing the power series with scaling and squaring. The remaining
functions decide membership in exp(Der(E)), audit products and conjugates,
describe the quotient Aut(E) / exp(Der(E)) and expose the isomorphisms
between the corner groups, including Aut(E) -> H1 for a nonempty I_A and
exp(Der(E)) -> H'.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional
from typing import Union

import numpy as np

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.automorphisms import AutomorphismParams
from evolgebra.automorphisms import build_automorphism
from evolgebra.automorphisms import compose
from evolgebra.automorphisms import eta
from evolgebra.automorphisms import invert
from evolgebra.automorphisms import roots_of_unity
from evolgebra.derivations import Case
from evolgebra.derivations import DerivationParams
from evolgebra.derivations import ScalarLike
from evolgebra.derivations import as_scalar
from evolgebra.derivations import build_derivation
from evolgebra.derivations import classification_case
from evolgebra.derivations import last_column_ratio
from evolgebra.derivations import require_classified
from evolgebra.errors import BackendMismatchError
from evolgebra.errors import BranchError
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import DomainError
from evolgebra.errors import InvalidParameterError
from evolgebra.errors import NotApplicableError
from evolgebra.errors import SeriesLimitError
from evolgebra.errors import UnsupportedBackendError
from evolgebra.linalg import LinearMap
from evolgebra.linalg import magnitude_product
from evolgebra.norm import operator_norm
from evolgebra.numeric import MEMBERSHIP_TOL
from evolgebra.numeric import SERIES_MAX_TERMS
from evolgebra.numeric import TAYLOR_CUTOFF
from evolgebra.numeric import ZERO_TOL
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number
from evolgebra.numeric import Scalar
from evolgebra.numeric import close
from evolgebra.numeric import scalar_log
from evolgebra.numeric import scalar_pow_int


logger = logging.getLogger(__name__)

INFINITE_INDEX = math.inf


class ExpMethod(str, Enum):
    """How an exponential was computed."""

    SERIES = "series"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class ExpResult:
    """An exponential e^M and how it was obtained.

    Attributes:
        matrix: The exponential.
        method: Series summation or the closed form.
        terms_used: Number of series terms summed, identity included.
            Zero for the closed form.
        params: The derivation parameters, when M came from them.
    """

    matrix: LinearMap
    method: ExpMethod
    terms_used: int = 0
    params: Optional[DerivationParams] = None


@dataclass(frozen=True)
class CornerParams:
    """The corner pair (a, b) of a 2x2 upper triangular matrix, a != 0."""

    a: Scalar
    b: Scalar

    def __post_init__(self) -> None:
        """a and b share a backend and a is nonzero."""
        if self.a.field is not self.b.field:
            raise BackendMismatchError("a and b live in different backends")
        if not self.a:
            raise InvalidParameterError("the corner entry a must be nonzero")

    @classmethod
    def of(cls, a: ScalarLike, b: ScalarLike, field: FieldTag) -> "CornerParams":
        """Build from plain numbers."""
        return cls(as_scalar(a, field), as_scalar(b, field))

    @property
    def field(self) -> FieldTag:
        """Backend of the pair."""
        return self.a.field

    def h2_product(self, other: "CornerParams") -> "CornerParams":
        """Product in H2, the group of matrices [[a, b], [0, a^2]]."""
        return CornerParams(
            self.a * other.a, self.a * other.b + self.b * other.a * other.a
        )

    def h2_matrix(self) -> LinearMap:
        """The H2 matrix [[a, b], [0, a^2]]."""
        a, b = self.a.value, self.b.value
        return LinearMap(self.field, ((a, b), (self.field.zero, a * a)))

    def isclose(self, other: "CornerParams", tol: float) -> bool:
        """Compare both entries on the scale of the largest of them."""
        if other.field is not self.field:
            raise BackendMismatchError("cannot compare pairs from different backends")
        size = max(abs(self.a), abs(self.b), abs(other.a), abs(other.b))
        return close(self.a.value, other.a.value, self.field, tol, size) and close(
            self.b.value, other.b.value, self.field, tol, size
        )


# Closed forms


def _exp(value: Number, field: FieldTag) -> Number:
    if field is FieldTag.RATIONAL:
        raise UnsupportedBackendError("exp is not available in the rational backend")
    try:
        return math.exp(value) if field is FieldTag.REAL else cmath.exp(value)
    except OverflowError:
        raise DomainError(f"exp({value!r}) overflows") from None


def beta_factor(alpha: Number, n: int, field: FieldTag) -> Number:
    """(e^(N alpha) - e^alpha) / ((N - 1) alpha) with N = 2^(n-1).

    This is the factor relating beta to the corner entry of e^d. Its value
    at alpha = 0 is 1, and below TAYLOR_CUTOFF it is evaluated from the
    cubic Taylor polynomial.
    """
    N = 2 ** (n - 1)
    if field is FieldTag.RATIONAL:
        if alpha != 0:
            raise UnsupportedBackendError(
                "e^d with alpha != 0 is not rational; use the real backend"
            )
        return field.one
    if abs(alpha) < TAYLOR_CUTOFF:
        return (
            1
            + (N + 1) * alpha / 2
            + (N * N + N + 1) * alpha**2 / 6
            + (N**3 + N * N + N + 1) * alpha**3 / 24
        )
    return (_exp(N * alpha, field) - _exp(alpha, field)) / ((N - 1) * alpha)


def derivation_power_closed(
    E: EvolutionAlgebra, params: DerivationParams, m: int
) -> LinearMap:
    """d^m for a derivation of an algebra with empty I_A.

    Row k carries 2^(m(k-1)) alpha^m on the diagonal and
    (2^(m(k-1)) - 2^(m(n-1))) alpha^m a_(k-1,n)/a_(k-1,k) in the last
    column; the corner is (2^(m(n-1)) - 1)/(2^(n-1) - 1) alpha^(m-1) beta.

    Raises:
        NotApplicableError: I_A is nonempty.
        DomainError: m < 1.
    """
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    d = build_derivation(E, params)
    if params.case is Case.NONEMPTY_IA:
        raise NotApplicableError("the closed power formula needs an empty I_A")
    if m == 1:
        return d

    n, field = E.n, E.field
    alpha, beta = params.alpha.value, params.beta.value
    alpha_m = alpha**m
    top = 2 ** (m * (n - 1))
    rows = [[field.zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        rows[k - 1][k - 1] = 2 ** (m * (k - 1)) * alpha_m
    for k in range(2, n):
        rows[k - 1][n - 1] = (
            (2 ** (m * (k - 1)) - top) * alpha_m * last_column_ratio(E, k)
        )
    coefficient = field.promote(Fraction(top - 1, 2 ** (n - 1) - 1))
    rows[0][n - 1] = coefficient * alpha ** (m - 1) * beta
    return LinearMap(field, tuple(tuple(row) for row in rows))


def exp_derivation_closed(E: EvolutionAlgebra, params: DerivationParams) -> ExpResult:
    """e^d from the classification, without any series.

    With a nonempty I_A, d = beta E_1n and e^d = I + d. With an empty one
    row k has e^(2^(k-1) alpha) on the diagonal and
    (e^(2^(k-1) alpha) - e^(2^(n-1) alpha)) a_(k-1,n)/a_(k-1,k) in the last
    column, and the corner is beta_factor(alpha) * beta.

    The rational backend is accepted only when alpha = 0, where e^d is
    rational.
    """
    build_derivation(E, params)
    n, field = E.n, E.field
    alpha, beta = params.alpha.value, params.beta.value
    if alpha == 0:
        rows = [list(row) for row in LinearMap.identity(n, field).rows]
        rows[0][n - 1] = beta
        matrix = LinearMap(field, tuple(tuple(row) for row in rows))
        return ExpResult(matrix, ExpMethod.CLOSED_FORM, 0, params)

    diagonal = [_exp(2 ** (k - 1) * alpha, field) for k in range(1, n + 1)]
    rows = [[field.zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        rows[k - 1][k - 1] = diagonal[k - 1]
    for k in range(2, n):
        ratio = last_column_ratio(E, k)
        rows[k - 1][n - 1] = (diagonal[k - 1] - diagonal[n - 1]) * ratio
    rows[0][n - 1] = beta_factor(alpha, n, field) * beta
    matrix = LinearMap(field, tuple(tuple(row) for row in rows))
    return ExpResult(matrix, ExpMethod.CLOSED_FORM, 0, params)


# Series


def exp_series(
    E: EvolutionAlgebra, M: LinearMap, tol: float = 1e-14
) -> ExpResult:
    """e^M by its power series, with scaling and squaring.

    M is first divided by 2^s so its operator norm is at most 1. Terms of
    the series of the scaled map are added until the operator norm of the
    next term drops below ``tol``, and the sum is squared s times.

    Raises:
        UnsupportedBackendError: Rational input.
        DegenerateNormError: gamma(E) is zero.
        SeriesLimitError: SERIES_MAX_TERMS terms did not converge.
    """
    if E.field is FieldTag.RATIONAL:
        raise UnsupportedBackendError("exp_series needs the real or complex backend")
    if M.field is not E.field:
        raise BackendMismatchError(f"{M.field.value} map on a {E.field.value} algebra")
    norm = float(operator_norm(E, M))
    squarings = max(0, math.ceil(math.log2(norm))) if norm > 1 else 0
    A = M.to_array() / 2**squarings

    result = np.eye(E.n, dtype=A.dtype)
    term = np.eye(E.n, dtype=A.dtype)
    terms_used = 1
    while True:
        term = term @ A / terms_used
        if np.abs(term).sum(axis=1).max() < tol:
            break
        result = result + term
        terms_used += 1
        if terms_used > SERIES_MAX_TERMS:
            raise SeriesLimitError(
                f"exponential series did not converge in {SERIES_MAX_TERMS} terms"
            )
    for _ in range(squarings):
        result = result @ result
    logger.debug("exp series: %d terms, %d squarings", terms_used, squarings)
    matrix = LinearMap.from_array(result, E.field)
    return ExpResult(matrix, ExpMethod.SERIES, terms_used)


# Membership, products and conjugates


def membership_exp_der(
    E: EvolutionAlgebra,
    M: LinearMap,
    tol: float = MEMBERSHIP_TOL,
    scale: Optional[LinearMap] = None,
) -> Optional[DerivationParams]:
    """Recover (alpha, beta) with e^d = M, or None when M is not in exp(Der(E)).

    alpha is the principal log of M_11; the diagonal must then consist of
    the powers M_11^(2^(k-1)). beta is read from the corner through
    :func:`beta_factor`, and the rebuilt exponential must match M entrywise.
    Rational matrices are members only with M_11 = 1.

    Args:
        E: A classified algebra.
        M: The candidate matrix.
        tol: Relative tolerance of the entrywise comparison.
        scale: Entrywise size of the terms M was computed from, for
            products and conjugates; see
            :func:`evolgebra.linalg.magnitude_product`.
    """
    require_classified(E)
    if M.field is not E.field:
        raise BackendMismatchError(f"{M.field.value} map on a {E.field.value} algebra")
    if M.n != E.n:
        raise DimensionMismatchError(
            f"map of size {M.n} on an algebra of dimension {E.n}"
        )
    n, field = E.n, E.field
    case = classification_case(E)
    m11 = M.entry(1, 1)

    if case is Case.NONEMPTY_IA or field.is_exact:
        if not close(m11, field.one, field, tol):
            return None
        alpha = field.zero
    else:
        try:
            alpha = scalar_log(Scalar(field, m11)).value
        except BranchError:
            logger.debug(
                "M_11 = %r has no logarithm in the %s backend", m11, field.value
            )
            return None
    for k in range(2, n + 1):
        expected = scalar_pow_int(Scalar(field, m11), 2 ** (k - 1)).value
        actual = M.entry(k, k)
        if not close(actual, expected, field, tol, max(abs(expected), abs(actual))):
            logger.debug("diagonal entry %d is not M_11^(2^%d)", k, k - 1)
            return None

    factor = beta_factor(alpha, n, field)
    beta = field.zero if abs(factor) <= ZERO_TOL else M.entry(1, n) / factor
    params = DerivationParams(Scalar(field, alpha), Scalar(field, beta), case)
    candidate = exp_derivation_closed(E, params).matrix
    if not candidate.allclose(M, tol, scale):
        logger.debug("closest exponential differs by %.3g", candidate.max_diff(M))
        return None
    return params


@dataclass(frozen=True)
class ProductReport:
    """Audit of e^(d1) e^(d2) against exp(Der(E)) and the closed lambda.

    Attributes:
        member: The product lies in exp(Der(E)).
        recovered: Its derivation parameters, when it does.
        nu_matches: Rows 2..n-1 of the last column equal nu_k a_(k,n)/a_(k,k+1).
        corner: The (1, n) entry of the product.
        closed_lambda: The closed lambda expression with denominators 3 alpha_i.
        closed_lambda_matches: Whether that expression equals the corner.
    """

    member: bool
    recovered: Optional[DerivationParams]
    nu_matches: bool
    corner: Number
    closed_lambda: Number
    closed_lambda_matches: bool


def _lambda_term(
    alpha_own: Number, alpha_other: Number, n: int, field: FieldTag
) -> Number:
    N = 2 ** (n - 1)
    outer = field.one if alpha_other == 0 else _exp(N * alpha_other, field)
    if alpha_own == 0:
        return outer * field.promote(Fraction(N - 2, 3))
    spread = _exp(N * alpha_own, field) - _exp(2 * alpha_own, field)
    return outer * spread / (3 * alpha_own)


def exp_product_check(
    E: EvolutionAlgebra,
    p1: DerivationParams,
    p2: DerivationParams,
    tol: float = MEMBERSHIP_TOL,
) -> ProductReport:
    """Multiply two closed-form exponentials and test the product.

    The product is ground truth. The lambda expression is only evaluated
    and compared; a zero alpha uses its limit (2^(n-1) - 2) / 3. Entries
    of the product are compared on the scale of |e^(d1)| |e^(d2)|.
    """
    M1 = exp_derivation_closed(E, p1).matrix
    M2 = exp_derivation_closed(E, p2).matrix
    M = compose(M1, M2)
    bound = magnitude_product(M1, M2)
    recovered = membership_exp_der(E, M, tol, bound)
    n, field = E.n, E.field
    a1, a2 = p1.alpha.value, p2.alpha.value
    total = a1 + a2

    nu_matches = True
    for k in range(1, n - 1):
        if total == 0:
            nu = field.zero
        else:
            nu = _exp(2**k * total, field) - _exp(2 ** (n - 1) * total, field)
        expected = nu * last_column_ratio(E, k + 1)
        actual = M.entry(k + 1, n)
        scale = max(abs(actual), abs(expected), bound.entry(k + 1, n))
        if not close(actual, expected, field, tol, scale):
            nu_matches = False
    closed_lambda = (
        _lambda_term(a1, a2, n, field) * p1.beta.value
        + _lambda_term(a2, a1, n, field) * p2.beta.value
    )
    corner = M.entry(1, n)
    scale = max(abs(corner), abs(closed_lambda), bound.entry(1, n))
    matches = close(corner, closed_lambda, field, tol, scale)
    if not matches:
        logger.debug(
            "closed lambda %r differs from the corner %r", closed_lambda, corner
        )
    return ProductReport(
        recovered is not None, recovered, nu_matches, corner, closed_lambda, matches
    )


def conjugation_check(
    E: EvolutionAlgebra,
    aut: AutomorphismParams,
    der: DerivationParams,
    tol: float = MEMBERSHIP_TOL,
) -> bool:
    """Whether phi e^d phi^(-1) lies in exp(Der(E)).

    The conjugate is compared on the scale of |phi| |e^d| |phi^(-1)|.
    """
    phi = build_automorphism(E, aut)
    phi_inv = invert(phi)
    exp_d = exp_derivation_closed(E, der).matrix
    conjugate = compose(compose(phi, exp_d), phi_inv)
    bound = magnitude_product(phi, exp_d, phi_inv)
    return membership_exp_der(E, conjugate, tol, bound) is not None


@dataclass(frozen=True)
class QuotientReport:
    """The quotient Aut(E) / exp(Der(E)) and its index."""

    case: Case
    field: FieldTag
    quotient_description: str
    index: Union[int, float]
    eta: Optional[int] = None

    @property
    def is_infinite(self) -> bool:
        """Whether the index is the infinite marker."""
        return self.index == INFINITE_INDEX

    def index_text(self) -> Union[int, str]:
        """The index, or ``"infinite"``."""
        return "infinite" if self.is_infinite else int(self.index)


def quotient_report(
    E: EvolutionAlgebra, field: Optional[FieldTag] = None
) -> QuotientReport:
    """Describe Aut(E) / exp(Der(E)) over a field (by default the algebra's).

    With a nonempty I_A the quotient is the group of eta-th roots of unity
    in the field. With an empty one it is K* / exp(K): the sign group over
    the reals, trivial over the complexes and infinite over the rationals,
    where only alpha = 0 exponentiates rationally.
    """
    require_classified(E)
    field = field or E.field
    case = classification_case(E)
    if case is Case.NONEMPTY_IA:
        order = eta(E).value
        roots = roots_of_unity(order, field)
        return QuotientReport(
            case,
            field,
            f"group of {order}-th roots of unity in the {field.value} field",
            len(roots),
            order,
        )
    if field is FieldTag.REAL:
        return QuotientReport(case, field, "R*/exp(R) = {1, -1} (sign of alpha)", 2)
    if field is FieldTag.COMPLEX:
        return QuotientReport(case, field, "C*/exp(C) is trivial (exp is onto C*)", 1)
    return QuotientReport(
        case,
        field,
        "Q*/{1}: no nonzero rational alpha exponentiates rationally",
        INFINITE_INDEX,
    )


# Corner groups


def corner_projection(M: LinearMap) -> CornerParams:
    """The pair (alpha, beta) = (M_11, M_1n) of an automorphism-shaped matrix."""
    return CornerParams(
        Scalar(M.field, M.entry(1, 1)), Scalar(M.field, M.entry(1, M.n))
    )


def corner_matrix(M: LinearMap) -> LinearMap:
    """The H3 matrix [[M_11, M_1n], [0, M_nn]] of an automorphism-shaped matrix.

    For automorphisms M_nn = M_11^(2^(n-1)) and M -> corner_matrix(M) is
    an isomorphism onto H3.
    """
    n = M.n
    return LinearMap(
        M.field, ((M.entry(1, 1), M.entry(1, n)), (M.field.zero, M.entry(n, n)))
    )


def _fractional_power(a: Number, exponent: float, field: FieldTag) -> Number:
    if field is FieldTag.RATIONAL:
        raise UnsupportedBackendError(
            "fractional powers need the real or complex backend"
        )
    if field is FieldTag.REAL:
        if a <= 0:
            raise BranchError(
                f"a = {a!r} has no real power {exponent!r}; a must be positive"
            )
        return a**exponent
    return cmath.exp(exponent * cmath.log(a))


def _mu(n: int) -> float:
    if n < 3:
        raise DomainError(f"the corner isomorphism needs n > 2, got {n}")
    return 1 / (2 ** (n - 1) - 1)


def iso_H2_to_H3(c: CornerParams, n: int) -> LinearMap:
    """The isomorphism from H2 = {[[a, b], [0, a^2]]} onto H3.

    Sends (a, b) to [[a^mu, a^(mu-1) b + (a^(mu+1) - a^mu)/2], [0, a^(mu+1)]]
    with mu = 1 / (2^(n-1) - 1). Complex powers use the principal branch.

    Raises:
        BranchError: a <= 0 in the real backend.
        UnsupportedBackendError: Rational input.
    """
    mu = _mu(n)
    field = c.field
    a, b = c.a.value, c.b.value
    a_mu = _fractional_power(a, mu, field)
    corner = a_mu / a * b + (a_mu * a - a_mu) / 2
    return LinearMap(field, ((a_mu, corner), (field.zero, a_mu * a)))


def iso_H3_to_H2(c: CornerParams, n: int) -> CornerParams:
    """Inverse of :func:`iso_H2_to_H3` on H3 = {[[x, y], [0, x^(2^(n-1))]]}.

    (x, y) goes to a = x^(2^(n-1) - 1) and
    b = (y - (a^(mu+1) - a^mu)/2) a^(1-mu), where a^mu is x itself.
    """
    _mu(n)
    field = c.field
    x, y = c.a.value, c.b.value
    a = scalar_pow_int(c.a, 2 ** (n - 1) - 1).value
    b = (y - (x * a - x) / 2) * a / x
    return CornerParams(Scalar(field, a), Scalar(field, b))


# Aut(E) and exp(Der(E)) as 2x2 groups


def h1_is_bijective(E: EvolutionAlgebra) -> bool:
    """Whether :func:`iso_aut_to_H1` is one-to-one.

    alpha -> alpha^(2^(n-1) - 1) permutes the eta-th roots of unity of the
    field when 2^(n-1) - 1 is prime to eta. The rationals and the reals
    only hold the roots 1 and -1, which every odd power fixes.

    Raises:
        NotApplicableError: I_A is empty.
    """
    order = eta(E).value
    if E.field is not FieldTag.COMPLEX:
        return True
    return math.gcd(2 ** (E.n - 1) - 1, order) == 1


def iso_aut_to_H1(E: EvolutionAlgebra, M: LinearMap) -> CornerParams:
    """The homomorphism from Aut(E) to H1 when I_A is nonempty.

    H1 is the group of matrices [[a, b], [0, a^2]] with a^eta = 1. The
    automorphism with parameters (alpha, beta) goes to
    (alpha^(N-1), alpha^(N-2) beta) with N = 2^(n-1), which is the corner
    (alpha, beta) itself when eta divides N - 2.

    Raises:
        NotApplicableError: I_A is empty.
    """
    order = eta(E).value
    N = 2 ** (E.n - 1)
    c = corner_projection(M)
    return CornerParams(
        scalar_pow_int(c.a, (N - 1) % order),
        scalar_pow_int(c.a, (N - 2) % order) * c.b,
    )


def iso_H1_to_aut(E: EvolutionAlgebra, c: CornerParams) -> LinearMap:
    """Inverse of :func:`iso_aut_to_H1`.

    Raises:
        NotApplicableError: I_A is empty, or the map is not one-to-one
            over this field.
        InvalidParameterError: a is not an eta-th root of unity.
        BackendMismatchError: c and E live in different backends.
    """
    if c.field is not E.field:
        raise BackendMismatchError(
            f"{c.field.value} pair for a {E.field.value} algebra"
        )
    order = eta(E).value
    if not h1_is_bijective(E):
        raise NotApplicableError(
            f"alpha -> alpha^(2^{E.n - 1} - 1) is not one-to-one on the "
            f"{order}-th roots of unity"
        )
    N = 2 ** (E.n - 1)
    exponent = pow(N - 1, -1, order) if math.gcd(N - 1, order) == 1 else 1
    alpha = scalar_pow_int(c.a, exponent)
    beta = c.b / scalar_pow_int(alpha, (N - 2) % order)
    return build_automorphism(E, AutomorphismParams.for_algebra(E, alpha, beta))


def iso_exp_to_Hprime(E: EvolutionAlgebra, M: LinearMap) -> CornerParams:
    """The isomorphism from exp(Der(E)) onto H'.

    With a nonempty I_A, M = I + beta E_1n goes to [[1, beta], [0, 1]]
    in H'_1. With an empty one the corner [[e^alpha, y], [0, e^(N alpha)]]
    of M is carried by :func:`iso_H3_to_H2` into
    H'_2 = {[[e^t, b], [0, e^(2t)]]}, with t = (N - 1) alpha.
    """
    require_classified(E)
    c = corner_projection(M)
    if classification_case(E) is Case.NONEMPTY_IA:
        return CornerParams(Scalar(E.field, 1), c.b)
    if E.n == 2:
        return c
    return iso_H3_to_H2(c, E.n)


def iso_Hprime_to_exp(E: EvolutionAlgebra, c: CornerParams) -> ExpResult:
    """Inverse of :func:`iso_exp_to_Hprime`.

    Raises:
        InvalidParameterError: a != 1 while I_A is nonempty.
        BranchError: a <= 0 in the real backend, where a must be e^t.
        UnsupportedBackendError: a != 1 in the rational backend.
    """
    require_classified(E)
    if c.field is not E.field:
        raise BackendMismatchError(
            f"{c.field.value} pair for a {E.field.value} algebra"
        )
    field = E.field
    if classification_case(E) is Case.NONEMPTY_IA:
        if not close(c.a.value, field.one, field, MEMBERSHIP_TOL):
            raise InvalidParameterError(f"H'_1 has a unit diagonal, got a = {c.a}")
        params = DerivationParams.for_algebra(E, 0, c.b)
    elif c.a.value == 1:
        params = DerivationParams.for_algebra(E, 0, c.b)
    else:
        if E.n == 2:
            x, y = c.a.value, c.b.value
        else:
            corner = iso_H2_to_H3(c, E.n)
            x, y = corner.entry(1, 1), corner.entry(1, 2)
        alpha = scalar_log(Scalar(field, x)).value
        beta = y / beta_factor(alpha, E.n, field)
        params = DerivationParams.for_algebra(E, alpha, beta)
    return exp_derivation_closed(E, params)
