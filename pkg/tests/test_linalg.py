"""Test cases for the linalg module."""

from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import SingularMatrixError
from evolgebra.linalg import LinearMap
from evolgebra.linalg import magnitude_product
from evolgebra.linalg import rref
from evolgebra.numeric import FieldTag


Q, R = FieldTag.RATIONAL, FieldTag.REAL

small_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4
    )
)


# # #      T E S T S     # # #


def test_rref_dependent_rows() -> None:
    """A multiple of a row adds nothing to the row space."""
    rows, pivots = rref([[1, 2], [2, 4]], Q)
    assert rows == ((Fraction(1), Fraction(2)),)
    assert pivots == (0,)


@given(small_matrices)
def test_rref_is_canonical(rows: list) -> None:
    """Reducing a reduced basis returns it unchanged."""
    reduced, pivots = rref(rows, Q)
    again, again_pivots = rref(reduced, Q)
    assert again == reduced
    assert again_pivots == pivots


def test_rref_float_threshold() -> None:
    """Entries far below the largest one do not make a pivot."""
    _, pivots = rref([[1.0, 0.0], [0.0, 1e-14]], R)
    assert pivots == (0,)


def test_inverse_exact() -> None:
    """An upper triangular rational matrix times its inverse is the identity."""
    M = LinearMap(Q, ((2, 1, 3), (0, 4, -1), (0, 0, Fraction(1, 2))))
    assert M @ M.inverse() == LinearMap.identity(3, Q)
    assert M.inverse() @ M == LinearMap.identity(3, Q)


def test_inverse_singular() -> None:
    """Rank-deficient matrices have no inverse."""
    with pytest.raises(SingularMatrixError):
        LinearMap(Q, ((1, 2), (2, 4))).inverse()


def test_map_element_is_transposed_matvec() -> None:
    """Row i holds the image of e_i."""
    M = LinearMap(Q, ((1, 2), (3, 4)))
    x = (Fraction(1), Fraction(-1))
    assert M.map_element(x) == (Fraction(-2), Fraction(-2))
    assert M.map_element(x) == M.transpose().matvec(x)
    assert M.matvec(x) == (Fraction(-1), Fraction(-1))


def test_shape_checks() -> None:
    """Maps are square and combine only with maps of the same size."""
    with pytest.raises(DimensionMismatchError):
        LinearMap(Q, ((1, 2),))
    with pytest.raises(DimensionMismatchError):
        _ = LinearMap.identity(2, Q) @ LinearMap.identity(3, Q)
    with pytest.raises(DimensionMismatchError):
        LinearMap.identity(2, Q).matvec((1, 2, 3))


def test_array_round_trip() -> None:
    """numpy arrays convert to real maps and back."""
    array = np.array([[1.5, -2.0], [0.0, 3.0]])
    M = LinearMap.from_array(array, R)
    assert M.entry(1, 2) == -2.0
    assert np.array_equal(M.to_array(), array)


def test_comparisons() -> None:
    """allclose is relative for large entries and exact for rationals."""
    A = LinearMap(R, ((1e8, 0.0), (0.0, 1.0)))
    B = LinearMap(R, ((1e8 + 1e-3, 0.0), (0.0, 1.0)))
    assert A.allclose(B, 1e-10)
    assert A.max_diff(B) == pytest.approx(1e-3, rel=1e-3)
    assert not LinearMap.identity(2, Q).allclose(LinearMap.zero(2, Q), 1.0)
    assert LinearMap.single_entry(3, 1, 3, Q, 5).is_upper_triangular()
    assert LinearMap(Q, ((1, -7), (0, 2))).max_abs() == 7.0


def test_magnitude_product() -> None:
    """|M1| |M2| keeps the terms that cancel in M1 M2."""
    M1 = LinearMap(R, ((1.0, -1.0), (0.0, 2.0)))
    M2 = LinearMap(R, ((1.0, 0.0), (1.0, 3.0)))
    assert (M1 @ M2).entry(1, 1) == 0.0
    bound = magnitude_product(M1, M2)
    assert bound == LinearMap(R, ((2.0, 3.0), (2.0, 6.0)))
    assert magnitude_product(M1) == M1.magnitude()
    with pytest.raises(DimensionMismatchError):
        magnitude_product()


def test_allclose_with_scale() -> None:
    """A scale widens the comparison to the size of the summed terms."""
    A = LinearMap(R, ((1e-3, 0.0), (0.0, 1.0)))
    B = LinearMap(R, ((1e-3 + 1e-7, 0.0), (0.0, 1.0)))
    assert not A.allclose(B, 1e-10)
    wide = LinearMap(R, ((1e6, 0.0), (0.0, 1.0)))
    assert A.allclose(B, 1e-10, scale=wide)
    with pytest.raises(DimensionMismatchError):
        A.allclose(B, 1e-10, scale=LinearMap.identity(3, R))
