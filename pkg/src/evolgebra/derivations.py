"""Derivations of nilpotent evolution algebras with maximal index.

For an algebra in canonical form (strictly upper triangular structural
matrix with nonzero superdiagonal) the derivation algebra Der(E) depends
only on whether the index set

    I_A = {(i, j) : i + 1 < j < n, a_ij != 0}

is empty. If it is not, Der(E) is spanned by the single-entry matrix
E_1n. If it is, Der(E) is two-dimensional: D_alpha has diagonal
(1, 2, 4, ..., 2^(n-1)) and a last column tied to the entries a_(k-1,n).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet
from typing import Iterator
from typing import List
from typing import Tuple
from typing import Union

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.errors import BackendMismatchError
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import InvalidParameterError
from evolgebra.errors import NotClassifiedError
from evolgebra.linalg import LinearMap
from evolgebra.numeric import CHECK_TOL
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number
from evolgebra.numeric import Scalar
from evolgebra.numeric import close


logger = logging.getLogger(__name__)


class Case(str, Enum):
    """Which branch of the classification an algebra falls in."""

    NONEMPTY_IA = "nonempty_IA"
    EMPTY_IA = "empty_IA"


@dataclass(frozen=True)
class IndexSet:
    """The 1-based pairs (i, j) with i + 1 < j < n and a_ij != 0."""

    pairs: FrozenSet[Tuple[int, int]]

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self.pairs))

    def as_list(self) -> List[List[int]]:
        """Sorted pairs as lists, for reports."""
        return [[i, j] for i, j in self]


def index_set(E: EvolutionAlgebra) -> IndexSet:
    """Collect the interior nonzero structural entries.

    >>> E = EvolutionAlgebra.from_rows(
    ...     [[0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
    ...     FieldTag.RATIONAL,
    ... )
    >>> index_set(E).as_list()
    [[1, 3]]
    """
    n = E.n
    return IndexSet(
        frozenset(
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 2, n)
            if not E.is_structural_zero(i, j)
        )
    )


def classification_case(E: EvolutionAlgebra) -> Case:
    """The case tag of an algebra, from its index set."""
    return Case.NONEMPTY_IA if index_set(E) else Case.EMPTY_IA


def require_classified(E: EvolutionAlgebra) -> None:
    """Check the hypotheses of the classification.

    Raises:
        NotClassifiedError: E is not canonical, or rank A != n - 1.
    """
    if not E.is_canonical_maximal():
        raise NotClassifiedError(
            "the algebra is not in canonical maximal-nilpotency form "
            "(strictly upper triangular, nonzero superdiagonal)"
        )
    rank = E.rank_structural()
    if rank != E.n - 1:
        raise NotClassifiedError(f"rank A is {rank}, expected {E.n - 1}")


def last_column_ratio(E: EvolutionAlgebra, k: int) -> Number:
    """a_(k-1,n) / a_(k-1,k), the coupling of row k to the last column."""
    return E.a(k - 1, E.n) / E.a(k - 1, k)


ScalarLike = Union[Scalar, Number, int]


def as_scalar(value: ScalarLike, field: FieldTag) -> Scalar:
    """Wrap a plain number, or check the backend of a scalar."""
    if isinstance(value, Scalar):
        if value.field is not field:
            raise BackendMismatchError(
                f"{value.field.value} parameter for a {field.value} algebra"
            )
        return value
    return Scalar(field, value)


@dataclass(frozen=True)
class DerivationParams:
    """The (alpha, beta) pair indexing Der(E)."""

    alpha: Scalar
    beta: Scalar
    case: Case

    def __post_init__(self) -> None:
        """alpha and beta share a backend; a nonempty I_A forces alpha = 0."""
        if self.alpha.field is not self.beta.field:
            raise BackendMismatchError("alpha and beta live in different backends")
        if self.case is Case.NONEMPTY_IA and self.alpha.value != 0:
            raise InvalidParameterError(
                f"alpha must be 0 when I_A is nonempty, got {self.alpha}"
            )

    @classmethod
    def for_algebra(
        cls, E: EvolutionAlgebra, alpha: ScalarLike, beta: ScalarLike
    ) -> "DerivationParams":
        """Parameters tagged with the case of E."""
        return cls(
            as_scalar(alpha, E.field), as_scalar(beta, E.field), classification_case(E)
        )

    @property
    def field(self) -> FieldTag:
        """Backend of the parameters."""
        return self.alpha.field

    def scaled(self, t: ScalarLike) -> "DerivationParams":
        """The parameters of t times the derivation."""
        t = as_scalar(t, self.field)
        return DerivationParams(self.alpha * t, self.beta * t, self.case)

    def to_dict(self) -> dict:
        """Text-encoded parameters for reports."""
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "case": self.case.value,
        }


@dataclass(frozen=True)
class DerivationSpace:
    """Der(E): its case, dimension and a basis."""

    case: Case
    dimension: int
    basis: Tuple[LinearMap, ...]


def _check_params(E: EvolutionAlgebra, params: DerivationParams) -> None:
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


def build_derivation(E: EvolutionAlgebra, params: DerivationParams) -> LinearMap:
    """The classified derivation with parameters (alpha, beta).

    Raises:
        NotClassifiedError: E is outside the classified class.
        InvalidParameterError: The parameter case does not match E.
    """
    _check_params(E, params)
    n, field = E.n, E.field
    alpha, beta = params.alpha.value, params.beta.value
    rows = [[field.zero] * n for _ in range(n)]
    rows[0][n - 1] = beta
    if params.case is Case.EMPTY_IA:
        top = 2 ** (n - 1)
        for k in range(1, n + 1):
            rows[k - 1][k - 1] += 2 ** (k - 1) * alpha
        for k in range(2, n):
            rows[k - 1][n - 1] = (2 ** (k - 1) - top) * alpha * last_column_ratio(E, k)
    return LinearMap(field, tuple(tuple(row) for row in rows))


def derivation_space(E: EvolutionAlgebra) -> DerivationSpace:
    """Der(E) in closed form.

    Raises:
        NotClassifiedError: E is outside the classified class.
    """
    require_classified(E)
    case = classification_case(E)
    e_1n = LinearMap.single_entry(E.n, 1, E.n, E.field)
    if case is Case.NONEMPTY_IA:
        return DerivationSpace(case, 1, (e_1n,))
    d_alpha = build_derivation(E, DerivationParams.for_algebra(E, 1, 0))
    return DerivationSpace(case, 2, (d_alpha, e_1n))


def is_derivation(E: EvolutionAlgebra, D: LinearMap, tol: float = CHECK_TOL) -> bool:
    """Check D(e_i e_j) = D(e_i) e_j + e_i D(e_j) on all basis pairs.

    Exact for rational algebras. For floats, coordinate l of the two sides
    may differ by ``tol`` times the size of the terms summed into it.
    """
    if D.field is not E.field:
        raise BackendMismatchError(f"{D.field.value} map on a {E.field.value} algebra")
    if D.n != E.n:
        raise DimensionMismatchError(
            f"map of size {D.n} on an algebra of dimension {E.n}"
        )
    abs_E, abs_D = E.magnitude(), D.magnitude()

    images = [E.element(row) for row in D.rows]
    for i in range(1, E.n + 1):
        for j in range(i, E.n + 1):
            if i == j:
                lhs = D.map_element(E.square(i).coords)
            else:
                lhs = (E.field.zero,) * E.n
            rhs = (
                E.multiply(images[i - 1], E.basis(j))
                + E.multiply(E.basis(i), images[j - 1])
            ).coords
            scales = (
                abs_E.multiply(abs_D.rows[i - 1], abs_E.basis(j))
                + abs_E.multiply(abs_E.basis(i), abs_D.rows[j - 1])
            ).coords
            if i == j:
                lhs_scale = abs_D.map_element(abs_E.square(i).coords)
                scales = tuple(max(a, b) for a, b in zip(scales, lhs_scale))
            triples = zip(lhs, rhs, scales)
            if not all(close(a, b, E.field, tol, s) for a, b, s in triples):
                logger.debug("Leibniz identity fails on the pair (%d, %d)", i, j)
                return False
    return True


def lie_bracket(D1: LinearMap, D2: LinearMap) -> LinearMap:
    """The commutator D1 D2 - D2 D1."""
    return D1 @ D2 - D2 @ D1
