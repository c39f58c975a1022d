"""Small dense matrices over a tagged field.

Matrices here are at most a handful of rows wide, so plain tuples of
Python numbers are used and exact rational arithmetic comes for free.
Numeric work that benefits from vectorization (exponential series, ODE
integration, sampling) converts to :mod:`numpy` with :meth:`LinearMap.to_array`.

Convention: the matrix of a linear map ``M`` of the algebra is written
with row ``i`` holding the coordinates of ``M(e_i)``. :meth:`LinearMap.map_element`
applies the map in that sense. :meth:`LinearMap.matvec` is the ordinary
coordinate product ``M @ x`` used by the operator norm and the ODE.
"""

from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import SingularMatrixError
from evolgebra.errors import UnsupportedBackendError
from evolgebra.numeric import PIVOT_TOL
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number
from evolgebra.numeric import close


Row = Tuple[Number, ...]


def rref(
    rows: Sequence[Sequence[Number]], field: FieldTag, tol: float = PIVOT_TOL
) -> Tuple[Tuple[Row, ...], Tuple[int, ...]]:
    """Reduced row echelon form of a list of rows.

    Rationals pivot on the first nonzero entry and are exact. Floats pivot
    on the largest entry of the column and treat anything at or below
    ``tol`` times the largest absolute input entry as zero.

    Returns:
        The nonzero reduced rows and their pivot columns. The result is a
        canonical representation of the row space, and reducing it again
        returns it unchanged.
    """
    m: List[List[Number]] = [[field.coerce(v) for v in row] for row in rows]
    if not m:
        return (), ()
    n_cols = len(m[0])
    if any(len(row) != n_cols for row in m):
        raise DimensionMismatchError("rows of unequal length")

    threshold = 0.0
    if not field.is_exact:
        largest = max((abs(v) for row in m for v in row), default=0.0)
        threshold = tol * largest
        if largest == 0:
            return (), ()

    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == len(m):
            break
        if field.is_exact:
            for k in range(piv_r, len(m)):
                if m[k][piv_c] != 0:
                    break
            else:
                continue
        else:
            k = max(range(piv_r, len(m)), key=lambda r: abs(m[r][piv_c]))
            if abs(m[k][piv_c]) <= threshold:
                continue

        m[piv_r], m[k] = m[k], m[piv_r]
        inv = field.one / m[piv_r][piv_c]
        m[piv_r] = [v * inv for v in m[piv_r]]
        m[piv_r][piv_c] = field.one
        for r in range(len(m)):
            if r == piv_r:
                continue
            factor = m[r][piv_c]
            if factor == 0:
                continue
            m[r] = [a - factor * b for a, b in zip(m[r], m[piv_r])]
            m[r][piv_c] = field.zero
        pivots.append(piv_c)
        piv_r += 1

    return tuple(tuple(row) for row in m[:piv_r]), tuple(pivots)


@dataclass(frozen=True)
class LinearMap:
    """A square matrix of scalars from one field."""

    field: FieldTag
    rows: Tuple[Row, ...]

    def __post_init__(self) -> None:
        """Validate the shape and coerce every entry into the field."""
        rows = tuple(tuple(self.field.coerce(v) for v in row) for row in self.rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionMismatchError("a linear map needs a square, nonempty matrix")
        object.__setattr__(self, "rows", rows)

    # Constructors

    @classmethod
    def identity(cls, n: int, field: FieldTag) -> "LinearMap":
        """The identity map of an n-dimensional space."""
        return cls(
            field,
            tuple(
                tuple(field.one if i == j else field.zero for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def zero(cls, n: int, field: FieldTag) -> "LinearMap":
        """The zero map."""
        return cls(field, tuple((field.zero,) * n for _ in range(n)))

    @classmethod
    def single_entry(
        cls, n: int, i: int, j: int, field: FieldTag, value: Number = 1
    ) -> "LinearMap":
        """The matrix with ``value`` at 1-based position (i, j) and zeros elsewhere."""
        value = field.coerce(value)
        return cls(
            field,
            tuple(
                tuple(
                    value if (r, c) == (i - 1, j - 1) else field.zero for c in range(n)
                )
                for r in range(n)
            ),
        )

    @classmethod
    def from_array(cls, array: np.ndarray, field: FieldTag) -> "LinearMap":
        """Wrap a float or complex numpy array."""
        if field is FieldTag.RATIONAL:
            raise UnsupportedBackendError(
                "numpy arrays only convert to real or complex maps"
            )
        cast = float if field is FieldTag.REAL else complex
        return cls(field, tuple(tuple(cast(v) for v in row) for row in array))

    # Shape and access

    @property
    def n(self) -> int:
        """Dimension of the space the map acts on."""
        return len(self.rows)

    def entry(self, i: int, j: int) -> Number:
        """Entry at 1-based position (i, j)."""
        return self.rows[i - 1][j - 1]

    def to_array(self) -> np.ndarray:
        """A float (real, rational) or complex numpy copy."""
        dtype = complex if self.field is FieldTag.COMPLEX else float
        return np.array([[dtype(v) for v in row] for row in self.rows], dtype=dtype)

    def to_strings(self) -> List[List[str]]:
        """Entries in the scalar text encoding, row by row."""
        return [[self.field.format(v) for v in row] for row in self.rows]

    def _check(self, other: "LinearMap") -> None:
        if other.field is not self.field:
            raise DimensionMismatchError(
                f"cannot combine {self.field.value} and {other.field.value} maps"
            )
        if other.n != self.n:
            raise DimensionMismatchError(f"sizes {self.n} and {other.n} differ")

    # Arithmetic

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        self._check(other)
        cols = list(zip(*other.rows))
        return LinearMap(
            self.field,
            tuple(
                tuple(
                    sum((a * b for a, b in zip(row, col)), self.field.zero)
                    for col in cols
                )
                for row in self.rows
            ),
        )

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check(other)
        return LinearMap(
            self.field,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def __neg__(self) -> "LinearMap":
        return self.scale(-1)

    def scale(self, c: Number) -> "LinearMap":
        """Multiply every entry by a scalar of the same field."""
        c = self.field.coerce(c)
        return LinearMap(
            self.field, tuple(tuple(c * v for v in row) for row in self.rows)
        )

    def transpose(self) -> "LinearMap":
        """The transposed matrix."""
        return LinearMap(self.field, tuple(zip(*self.rows)))

    def matvec(self, x: Sequence[Number]) -> Row:
        """Coordinate product ``M @ x``."""
        if len(x) != self.n:
            raise DimensionMismatchError(f"vector of length {len(x)} for size {self.n}")
        return tuple(
            sum((a * b for a, b in zip(row, x)), self.field.zero) for row in self.rows
        )

    def map_element(self, x: Sequence[Number]) -> Row:
        """Image of ``x = sum x_i e_i`` when row i is the image of ``e_i``."""
        if len(x) != self.n:
            raise DimensionMismatchError(f"vector of length {len(x)} for size {self.n}")
        out = [self.field.zero] * self.n
        for xi, row in zip(x, self.rows):
            if xi == 0:
                continue
            for j, v in enumerate(row):
                out[j] += xi * v
        return tuple(out)

    # Invariants

    def rank(self) -> int:
        """Rank by row reduction."""
        return len(rref(self.rows, self.field)[1])

    def inverse(self) -> "LinearMap":
        """Gauss-Jordan inverse.

        Raises:
            SingularMatrixError: The matrix has deficient rank.
        """
        n = self.n
        augmented = [
            list(row)
            + [self.field.one if i == j else self.field.zero for j in range(n)]
            for i, row in enumerate(self.rows)
        ]
        reduced, pivots = rref(augmented, self.field, tol=0.0)
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            raise SingularMatrixError("matrix is not invertible")
        return LinearMap(self.field, tuple(tuple(row[n:]) for row in reduced[:n]))

    def magnitude(self) -> "LinearMap":
        """Entrywise absolute values, as a real map."""
        return LinearMap(
            FieldTag.REAL, tuple(tuple(float(abs(v)) for v in row) for row in self.rows)
        )

    def max_abs(self) -> float:
        """Largest absolute entry."""
        return max(float(abs(v)) for row in self.rows for v in row)

    def is_upper_triangular(self) -> bool:
        """True when every entry below the diagonal is exactly zero."""
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i))

    def max_diff(self, other: "LinearMap") -> float:
        """Largest absolute entrywise difference."""
        self._check(other)
        return max(
            float(abs(a - b))
            for r1, r2 in zip(self.rows, other.rows)
            for a, b in zip(r1, r2)
        )

    def maximum(self, other: "LinearMap") -> "LinearMap":
        """Entrywise maximum of two real maps."""
        self._check(other)
        return LinearMap(
            self.field,
            tuple(
                tuple(max(a, b) for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def allclose(
        self, other: "LinearMap", tol: float, scale: Optional["LinearMap"] = None
    ) -> bool:
        """Entrywise comparison, exact for rationals.

        Float entries must agree within ``tol * max(1, |a|, |b|, s)``, where
        ``s`` is the matching entry of ``scale`` when one is given.
        """
        self._check(other)
        if scale is None:
            scale = self.magnitude().maximum(other.magnitude())
        elif scale.n != self.n:
            raise DimensionMismatchError(f"scale of size {scale.n} for size {self.n}")
        return all(
            close(a, b, self.field, tol, max(abs(a), abs(b), s))
            for r1, r2, rs in zip(self.rows, other.rows, scale.rows)
            for a, b, s in zip(r1, r2, rs)
        )


def magnitude_product(*maps: LinearMap) -> LinearMap:
    """|M1| |M2| ... |Mk| with entrywise absolute values.

    Entry (i, j) bounds the terms summed into entry (i, j) of the product,
    so rounding in the product is measured against it rather than against
    the product, whose entries may cancel.
    """
    if not maps:
        raise DimensionMismatchError("magnitude_product needs at least one map")
    result = maps[0].magnitude()
    for M in maps[1:]:
        result = result @ M.magnitude()
    return result
