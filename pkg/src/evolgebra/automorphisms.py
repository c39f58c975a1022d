"""Automorphisms of nilpotent evolution algebras with maximal index.

An automorphism of an algebra in canonical form is upper triangular with
diagonal (alpha, alpha^2, alpha^4, ..., alpha^(2^(n-1))), an arbitrary
corner entry beta and a last column phi fixed by alpha. When the index set
I_A is nonempty alpha must also be an eta-th root of unity, where eta is
the gcd of the numbers 2^(j-1) - 2^i over (i, j) in I_A.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.derivations import Case
from evolgebra.derivations import ScalarLike
from evolgebra.derivations import as_scalar
from evolgebra.derivations import classification_case
from evolgebra.derivations import index_set
from evolgebra.derivations import require_classified
from evolgebra.errors import BackendMismatchError
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import DomainError
from evolgebra.errors import InvalidParameterError
from evolgebra.errors import NotApplicableError
from evolgebra.errors import SingularMatrixError
from evolgebra.linalg import LinearMap
from evolgebra.numeric import CHECK_TOL
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number
from evolgebra.numeric import Scalar
from evolgebra.numeric import close
from evolgebra.numeric import gcd_int
from evolgebra.numeric import scalar_pow_int


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Eta:
    """The gcd attached to a nonempty index set."""

    value: int
    differences: Tuple[int, ...]

    def __post_init__(self) -> None:
        """eta is a positive integer."""
        if self.value < 1:
            raise DomainError(f"eta must be positive, got {self.value}")

    def __int__(self) -> int:
        return self.value


def eta(E: EvolutionAlgebra) -> Eta:
    """gcd of 2^(j-1) - 2^i over the pairs (i, j) of I_A.

    Every difference is a nonzero multiple of 2^i because j - 1 > i, so
    the gcd is well defined and even.

    >>> E = EvolutionAlgebra.from_rows(
    ...     [[0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
    ...     FieldTag.RATIONAL,
    ... )
    >>> eta(E).value
    2

    Raises:
        NotApplicableError: I_A is empty.
    """
    pairs = index_set(E)
    if not pairs:
        raise NotApplicableError("eta is only defined when I_A is nonempty")
    differences = tuple(2 ** (j - 1) - 2**i for i, j in pairs)
    value = gcd_int(differences)
    logger.debug("eta = gcd%s = %d", differences, value)
    return Eta(value, differences)


def is_root_of_unity(alpha: Scalar, order: int, tol: float = CHECK_TOL) -> bool:
    """Whether alpha^order == 1, exactly for rationals."""
    return close((alpha**order).value, alpha.field.one, alpha.field, tol)


def roots_of_unity(order: int, field: FieldTag) -> List[Scalar]:
    """The solutions of x^order = 1 in a field, starting with 1.

    The rationals and reals have 1 and, for even order, -1. The complexes
    have all ``order`` roots exp(2 pi i k / order); parts below 1e-15 are
    rounded to zero so that i comes out as ``0.0+1.0i``.
    """
    if order < 1:
        raise DomainError(f"order must be positive, got {order}")
    if field is not FieldTag.COMPLEX:
        roots = [Scalar(field, 1)]
        if order % 2 == 0:
            roots.append(Scalar(field, -1))
        return roots

    roots = []
    for k in range(order):
        z = cmath.rect(1.0, 2 * math.pi * k / order)
        re = 0.0 if abs(z.real) < 1e-15 else z.real
        im = 0.0 if abs(z.imag) < 1e-15 else z.imag
        roots.append(Scalar(field, complex(re, im)))
    return roots


@dataclass(frozen=True)
class AutomorphismParams:
    """The (alpha, beta) pair indexing Aut(E)."""

    alpha: Scalar
    beta: Scalar
    case: Case

    def __post_init__(self) -> None:
        """alpha is nonzero and shares a backend with beta."""
        if self.alpha.field is not self.beta.field:
            raise BackendMismatchError("alpha and beta live in different backends")
        if not self.alpha:
            raise InvalidParameterError("alpha must be nonzero for an automorphism")

    @classmethod
    def for_algebra(
        cls, E: EvolutionAlgebra, alpha: ScalarLike, beta: ScalarLike
    ) -> "AutomorphismParams":
        """Parameters tagged with the case of E, checked against eta."""
        params = cls(
            as_scalar(alpha, E.field), as_scalar(beta, E.field), classification_case(E)
        )
        _check_params(E, params)
        return params

    @property
    def field(self) -> FieldTag:
        """Backend of the parameters."""
        return self.alpha.field

    def to_dict(self) -> dict:
        """Text-encoded parameters for reports."""
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "case": self.case.value,
        }


def _check_params(E: EvolutionAlgebra, params: AutomorphismParams) -> None:
    require_classified(E)
    if params.field is not E.field:
        raise BackendMismatchError(
            f"{params.field.value} parameters for a {E.field.value} algebra"
        )
    case = classification_case(E)
    if params.case is not case:
        raise InvalidParameterError(
            f"parameters are tagged {params.case.value} but the algebra is {case.value}"
        )
    if case is Case.NONEMPTY_IA:
        order = eta(E).value
        if not is_root_of_unity(params.alpha, order):
            raise InvalidParameterError(
                f"alpha = {params.alpha} is not a root of unity of order eta = {order}"
            )


def phi_entries(E: EvolutionAlgebra, alpha: ScalarLike) -> Tuple[Number, ...]:
    """The last-column entries phi_(2,n), ..., phi_(n-1,n) of an automorphism.

    They solve, for i from n - 2 down to 1,

        a_(i,i+1) phi_(i+1) = a_(i,n) (alpha^(2^i) - alpha^(2^(n-1)))
                              - sum_(j=i+2)^(n-1) a_ij phi_j

    which comes from comparing the e_n coordinate of phi(e_i e_i) and
    phi(e_i)^2. The result is empty for n = 2.
    """
    require_classified(E)
    alpha = as_scalar(alpha, E.field)
    if not alpha:
        raise InvalidParameterError("alpha must be nonzero for an automorphism")
    n = E.n
    top = scalar_pow_int(alpha, 2 ** (n - 1)).value
    phi: Dict[int, Number] = {}
    for i in range(n - 2, 0, -1):
        value = E.a(i, n) * (scalar_pow_int(alpha, 2**i).value - top)
        for j in range(i + 2, n):
            value -= E.a(i, j) * phi[j]
        phi[i + 1] = value / E.a(i, i + 1)
    entries = tuple(phi[k] for k in range(2, n))
    if not E.field.is_exact and not all(cmath.isfinite(v) for v in entries):
        raise DomainError(f"phi overflows for alpha = {alpha} in dimension {n}")
    return entries


def build_automorphism(E: EvolutionAlgebra, params: AutomorphismParams) -> LinearMap:
    """The classified automorphism with parameters (alpha, beta).

    Raises:
        NotClassifiedError: E is outside the classified class.
        InvalidParameterError: alpha is not an eta-th root of unity while
            I_A is nonempty, or the case tag does not match E.
    """
    _check_params(E, params)
    n, field = E.n, E.field
    rows = [[field.zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        rows[k - 1][k - 1] = scalar_pow_int(params.alpha, 2 ** (k - 1)).value
    rows[0][n - 1] = params.beta.value
    for k, value in enumerate(phi_entries(E, params.alpha), start=2):
        rows[k - 1][n - 1] = value
    return LinearMap(field, tuple(tuple(row) for row in rows))


def is_automorphism(
    E: EvolutionAlgebra,
    M: LinearMap,
    tol: float = CHECK_TOL,
    scale: Optional[LinearMap] = None,
) -> bool:
    """Check that M is invertible and M(e_i e_j) = M(e_i) M(e_j) on basis pairs.

    Float coordinates are compared within ``tol`` times the size of the
    terms summed into them. When M was computed as a product, ``scale``
    (see :func:`evolgebra.linalg.magnitude_product`) bounds its entries
    with the size of the factors and replaces |M| in those sizes.
    """
    if M.field is not E.field:
        raise BackendMismatchError(f"{M.field.value} map on a {E.field.value} algebra")
    if M.n != E.n:
        raise DimensionMismatchError(
            f"map of size {M.n} on an algebra of dimension {E.n}"
        )
    try:
        M.inverse()
    except SingularMatrixError:
        logger.debug("map is singular")
        return False

    abs_E, abs_M = E.magnitude(), M.magnitude()
    if scale is not None:
        abs_M = abs_M.maximum(scale)
    images = [E.element(row) for row in M.rows]
    for i in range(1, E.n + 1):
        for j in range(i, E.n + 1):
            if i == j:
                lhs = M.map_element(E.square(i).coords)
            else:
                lhs = (E.field.zero,) * E.n
            rhs = E.multiply(images[i - 1], images[j - 1]).coords
            scales = abs_E.multiply(abs_M.rows[i - 1], abs_M.rows[j - 1]).coords
            if i == j:
                lhs_scale = abs_M.map_element(abs_E.square(i).coords)
                scales = tuple(max(a, b) for a, b in zip(scales, lhs_scale))
            triples = zip(lhs, rhs, scales)
            if not all(close(a, b, E.field, tol, s) for a, b, s in triples):
                logger.debug("multiplicativity fails on the pair (%d, %d)", i, j)
                return False
    return True


def compose(M1: LinearMap, M2: LinearMap) -> LinearMap:
    """Matrix product of two automorphisms.

    Raises:
        BackendMismatchError: The maps live in different backends.
        DimensionMismatchError: Their sizes differ.
    """
    if M1.field is not M2.field:
        raise BackendMismatchError(
            f"cannot compose {M1.field.value} and {M2.field.value} maps"
        )
    return M1 @ M2


def invert(M: LinearMap) -> LinearMap:
    """Inverse of an automorphism.

    Raises:
        SingularMatrixError: M is not invertible.
    """
    return M.inverse()
