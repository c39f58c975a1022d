"""Evolution algebras, their elements and power subspaces.

An evolution algebra of dimension n has a natural basis e_1, ..., e_n with
e_i e_j = 0 for i != j and e_i e_i = sum_j a_ij e_j. The structural matrix
A = (a_ij) holds the coordinates of e_i e_i in row i.
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from itertools import product
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from evolgebra.errors import BackendMismatchError
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import DomainError
from evolgebra.linalg import LinearMap
from evolgebra.linalg import Row
from evolgebra.linalg import rref
from evolgebra.numeric import NEAR_ZERO_WARN
from evolgebra.numeric import ZERO_TOL
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number
from evolgebra.numeric import is_zero


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Element:
    """Coordinates of x = sum x_i e_i in the natural basis."""

    field: FieldTag
    coords: Row

    def __post_init__(self) -> None:
        """Coerce the coordinates into the field."""
        object.__setattr__(
            self, "coords", tuple(self.field.coerce(v) for v in self.coords)
        )

    @classmethod
    def basis(cls, n: int, i: int, field: FieldTag) -> "Element":
        """The natural basis vector e_i (1-based)."""
        coords = tuple(field.one if k == i - 1 else field.zero for k in range(n))
        return cls(field, coords)

    @classmethod
    def zero(cls, n: int, field: FieldTag) -> "Element":
        """The zero element."""
        return cls(field, (field.zero,) * n)

    @property
    def n(self) -> int:
        """Number of coordinates."""
        return len(self.coords)

    def is_zero(self, tol: float = ZERO_TOL) -> bool:
        """Exact test for rationals, tolerance test otherwise."""
        return all(is_zero(v, self.field, tol) for v in self.coords)

    def _check(self, other: "Element") -> None:
        if other.field is not self.field:
            raise BackendMismatchError(
                f"cannot combine {self.field.value} and {other.field.value} elements"
            )
        if other.n != self.n:
            raise DimensionMismatchError(f"lengths {self.n} and {other.n} differ")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def scale(self, c: Number) -> "Element":
        """Multiply by a scalar of the same field."""
        c = self.field.coerce(c)
        return Element(self.field, tuple(c * v for v in self.coords))

    def to_strings(self) -> List[str]:
        """Coordinates in the scalar text encoding."""
        return [self.field.format(v) for v in self.coords]


@dataclass(frozen=True)
class Subspace:
    """A subspace kept as its reduced row echelon basis.

    Two subspaces are equal exactly when their canonical bases are.
    """

    field: FieldTag
    n: int
    basis: Tuple[Row, ...]

    @classmethod
    def span(
        cls, vectors: Sequence[Sequence[Number]], n: int, field: FieldTag
    ) -> "Subspace":
        """The span of some vectors, row reduced."""
        basis, _ = rref(vectors, field) if vectors else ((), ())
        return cls(field, n, basis)

    @classmethod
    def whole(cls, n: int, field: FieldTag) -> "Subspace":
        """The whole n-dimensional space."""
        return cls(field, n, LinearMap.identity(n, field).rows)

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return len(self.basis)

    def is_zero(self) -> bool:
        """True for the zero subspace."""
        return not self.basis


ElementLike = Union[Element, Sequence[Number]]


@dataclass(frozen=True)
class EvolutionAlgebra:
    """An evolution algebra given by its structural matrix.

    Attributes:
        structure: The matrix A, row i holding the coordinates of e_i e_i.
        name: Optional label echoed in reports.
    """

    structure: LinearMap
    name: Optional[str] = None

    def __post_init__(self) -> None:
        """An evolution algebra needs at least two basis vectors."""
        if self.structure.n < 2:
            raise DomainError(f"dimension must be at least 2, got {self.structure.n}")

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Number]],
        field: FieldTag,
        name: Optional[str] = None,
    ) -> "EvolutionAlgebra":
        """Build from a nested list of structural constants."""
        return cls(LinearMap(field, tuple(tuple(row) for row in rows)), name)

    @property
    def n(self) -> int:
        """Dimension of the algebra."""
        return self.structure.n

    @property
    def field(self) -> FieldTag:
        """The backend of the structural constants."""
        return self.structure.field

    def a(self, i: int, j: int) -> Number:
        """Structural constant a_ij (1-based)."""
        return self.structure.entry(i, j)

    def is_structural_zero(self, i: int, j: int) -> bool:
        """Whether a_ij counts as zero (exact, or within ZERO_TOL in floats)."""
        return is_zero(self.a(i, j), self.field, ZERO_TOL)

    def near_zero_entries(self) -> List[Tuple[int, int]]:
        """Float entries small enough to make the classification fragile."""
        if self.field.is_exact:
            return []
        return [
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 1)
            if ZERO_TOL < abs(self.a(i, j)) < NEAR_ZERO_WARN
        ]

    def astype(self, field: FieldTag) -> "EvolutionAlgebra":
        """The same algebra over a wider field."""
        if field is self.field:
            return self
        rows = tuple(
            tuple(field.promote(v) for v in row) for row in self.structure.rows
        )
        return EvolutionAlgebra(LinearMap(field, rows), self.name)

    def magnitude(self) -> "EvolutionAlgebra":
        """The real algebra with structural constants |a_ij|.

        Products in it bound the size of the terms that make up products
        in this algebra, which is what float comparisons are scaled by.
        """
        return EvolutionAlgebra(self.structure.magnitude(), self.name)

    # Elements and multiplication

    def element(self, x: ElementLike) -> Element:
        """Wrap coordinates as an element of this algebra."""
        if isinstance(x, Element):
            if x.field is not self.field:
                raise BackendMismatchError(
                    f"{x.field.value} element in a {self.field.value} algebra"
                )
        else:
            x = Element(self.field, tuple(x))
        if x.n != self.n:
            raise DimensionMismatchError(
                f"element of length {x.n} in dimension {self.n}"
            )
        return x

    def basis(self, i: int) -> Element:
        """Natural basis vector e_i (1-based)."""
        return Element.basis(self.n, i, self.field)

    def square(self, i: int) -> Element:
        """e_i e_i, which is row i of the structural matrix."""
        return Element(self.field, self.structure.rows[i - 1])

    def multiply(self, x: ElementLike, y: ElementLike) -> Element:
        """The product x y = sum_j (sum_i a_ij x_i y_i) e_j.

        Commutative by construction.
        """
        x, y = self.element(x), self.element(y)
        weights = [xi * yi for xi, yi in zip(x.coords, y.coords)]
        return Element(self.field, self.structure.map_element(weights))

    # Power subspaces and nilpotency

    def _span_of_products(self, u: Subspace, v: Subspace) -> List[Row]:
        if u == v:
            pairs = combinations_with_replacement(u.basis, 2)
        else:
            pairs = product(u.basis, v.basis)
        return [self.multiply(p, q).coords for p, q in pairs]

    def _iter_powers(self) -> Iterator[Subspace]:
        powers = [Subspace.whole(self.n, self.field)]
        yield powers[0]
        k = 1
        while True:
            k += 1
            vectors: List[Row] = []
            for i in range(1, k // 2 + 1):
                left, right = powers[i - 1], powers[k - i - 1]
                if left.is_zero() or right.is_zero():
                    continue
                vectors.extend(self._span_of_products(left, right))
            power = Subspace.span(vectors, self.n, self.field)
            powers.append(power)
            yield power

    def power_subspaces(self, k_max: int) -> List[Subspace]:
        """The sequence E^1, ..., E^k_max.

        E^1 is the whole algebra and E^k is the sum of the products
        E^i E^(k-i) for 1 <= i <= floor(k/2).
        """
        if k_max < 1:
            raise DomainError(f"k_max must be at least 1, got {k_max}")
        powers = []
        for power in self._iter_powers():
            powers.append(power)
            if len(powers) == k_max:
                return powers
        return powers  # pragma: no cover

    def nilpotency_index(self) -> Optional[int]:
        """Smallest m with E^m = 0, or None when the algebra is not nilpotent.

        The search stops at the maximal possible index 2^(n-1) + 1.
        """
        bound = 2 ** (self.n - 1) + 1
        for m, power in enumerate(self._iter_powers(), start=1):
            if power.is_zero():
                logger.debug("E^%d = 0, nilpotency index %d", m, m)
                return m
            if m >= bound:
                logger.debug("E^%d still has dimension %d, not nilpotent", m, power.dim)
                return None
        return None  # pragma: no cover

    def is_canonical_maximal(self) -> bool:
        """Strictly upper triangular with every a_(i,i+1) nonzero."""
        lower_ok = all(
            self.is_structural_zero(i, j)
            for i in range(1, self.n + 1)
            for j in range(1, i + 1)
        )
        super_ok = all(
            not self.is_structural_zero(i, i + 1) for i in range(1, self.n)
        )
        return lower_ok and super_ok

    def rank_structural(self) -> int:
        """Rank of A, which equals dim(E E)."""
        return self.structure.rank()
