"""Test cases for the derivations module."""

from fractions import Fraction
from typing import List

import hypothesis.strategies as st
import pytest
from hypothesis import given
from hypothesis import settings

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.derivations import Case
from evolgebra.derivations import DerivationParams
from evolgebra.derivations import build_derivation
from evolgebra.derivations import classification_case
from evolgebra.derivations import derivation_space
from evolgebra.derivations import index_set
from evolgebra.derivations import is_derivation
from evolgebra.derivations import lie_bracket
from evolgebra.errors import BackendMismatchError
from evolgebra.errors import InvalidParameterError
from evolgebra.errors import NotClassifiedError
from evolgebra.linalg import LinearMap
from evolgebra.linalg import rref
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Scalar
from tests.strategies import canonical_algebras


Q, R = FieldTag.RATIONAL, FieldTag.REAL

params = st.fractions(min_value=-4, max_value=4, max_denominator=8)


def leibniz_nullity(E: EvolutionAlgebra) -> int:
    """Dimension of the solution space of the Leibniz equations.

    The unknown d_pq (row p of D is D(e_p)) sits at index (p-1) n + (q-1).
    """
    n = E.n
    equations: List[List[Fraction]] = []

    def unknown(p: int, q: int) -> int:
        return (p - 1) * n + (q - 1)

    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for l in range(1, n + 1):
                row = [Fraction(0)] * (n * n)
                if i != j:
                    row[unknown(i, j)] += E.a(j, l)
                    row[unknown(j, i)] += E.a(i, l)
                else:
                    for p in range(1, n + 1):
                        row[unknown(p, l)] += E.a(i, p)
                    row[unknown(i, i)] -= 2 * E.a(i, l)
                equations.append(row)
    return n * n - len(rref(equations, Q)[1])


# # #      T E S T S     # # #


def test_index_sets(
    e3: EvolutionAlgebra, e4: EvolutionAlgebra, e5_eta4: EvolutionAlgebra
) -> None:
    """Interior nonzero entries only; the last column never counts."""
    assert not index_set(e3)
    assert index_set(e4).as_list() == [[1, 3]]
    assert index_set(e5_eta4).as_list() == [[2, 4]]
    assert classification_case(e3) is Case.EMPTY_IA
    assert classification_case(e4) is Case.NONEMPTY_IA


def test_space_dimensions(
    e3: EvolutionAlgebra, e4: EvolutionAlgebra, e4_empty: EvolutionAlgebra
) -> None:
    """Two generators when I_A is empty, one otherwise."""
    assert derivation_space(e3).dimension == 2
    assert derivation_space(e4).dimension == 1
    assert derivation_space(e4).basis == (LinearMap.single_entry(4, 1, 4, Q),)
    assert derivation_space(e4_empty).dimension == 2


def test_d_alpha(e3: EvolutionAlgebra) -> None:
    """The diagonal generator of Der(E3)."""
    d_alpha, e_13 = derivation_space(e3).basis
    assert d_alpha == LinearMap(Q, ((1, 0, 0), (0, 2, -2), (0, 0, 4)))
    assert e_13 == LinearMap.single_entry(3, 1, 3, Q)


def test_build_derivation(e3: EvolutionAlgebra) -> None:
    """alpha = 1/2, beta = 3."""
    D = build_derivation(e3, DerivationParams.for_algebra(e3, Fraction(1, 2), 3))
    expected = ((Fraction(1, 2), 0, 3), (0, 1, -1), (0, 0, 2))
    assert D == LinearMap(Q, expected)
    assert is_derivation(e3, D)


def test_not_a_derivation(e3: EvolutionAlgebra) -> None:
    """E_12 breaks the identity on the pair (1, 2)."""
    assert not is_derivation(e3, LinearMap.single_entry(3, 1, 2, Q))
    assert is_derivation(e3, LinearMap.zero(3, Q))


def test_bracket(e3: EvolutionAlgebra) -> None:
    """[D_alpha, E_13] = -3 E_13, so Der(E3) is not abelian."""
    d_alpha, e_13 = derivation_space(e3).basis
    assert lie_bracket(d_alpha, e_13) == e_13.scale(-3)
    assert is_derivation(e3, lie_bracket(d_alpha, e_13))


@given(canonical_algebras(sizes=st.integers(2, 6)), params, params)
def test_closed_form_satisfies_leibniz(
    E: EvolutionAlgebra, alpha: Fraction, beta: Fraction
) -> None:
    """Every classified derivation passes the exact Leibniz check."""
    if classification_case(E) is Case.NONEMPTY_IA:
        alpha = Fraction(0)
    D = build_derivation(E, DerivationParams.for_algebra(E, alpha, beta))
    assert is_derivation(E, D)


@settings(max_examples=40)
@given(canonical_algebras(sizes=st.integers(2, 5)))
def test_dimension_matches_leibniz_system(E: EvolutionAlgebra) -> None:
    """The closed form finds every derivation."""
    assert derivation_space(E).dimension == leibniz_nullity(E)


@given(canonical_algebras(sizes=st.integers(3, 5), field=R, interior="empty"))
def test_real_derivations(E: EvolutionAlgebra) -> None:
    """The float check accepts the real generators."""
    for D in derivation_space(E).basis:
        assert is_derivation(E, D)


def test_nonempty_case_needs_alpha_zero(e4: EvolutionAlgebra) -> None:
    """alpha != 0 is not a derivation parameter when I_A is nonempty."""
    with pytest.raises(InvalidParameterError):
        DerivationParams.for_algebra(e4, 1, 0)
    D = build_derivation(e4, DerivationParams.for_algebra(e4, 0, 5))
    assert D == LinearMap.single_entry(4, 1, 4, Q, 5)


def test_case_tag_must_match(e3: EvolutionAlgebra) -> None:
    """Parameters tagged for the other branch are refused."""
    wrong = DerivationParams(Scalar(Q, 0), Scalar(Q, 1), Case.NONEMPTY_IA)
    with pytest.raises(InvalidParameterError):
        build_derivation(e3, wrong)


def test_unclassified() -> None:
    """Algebras outside canonical form are refused."""
    E = EvolutionAlgebra.from_rows([[0, 1, 1], [0, 0, 0], [0, 0, 0]], Q)
    with pytest.raises(NotClassifiedError):
        derivation_space(E)


def test_backend_mismatch(e3: EvolutionAlgebra, e3_real: EvolutionAlgebra) -> None:
    """Parameters and maps keep to the backend of the algebra."""
    with pytest.raises(BackendMismatchError):
        DerivationParams.for_algebra(e3, Scalar(R, 1.0), 0)
    with pytest.raises(BackendMismatchError):
        build_derivation(e3_real, DerivationParams.for_algebra(e3, 1, 0))
    with pytest.raises(BackendMismatchError):
        is_derivation(e3_real, LinearMap.zero(3, Q))


def test_scaled_params(e3: EvolutionAlgebra) -> None:
    """t times a derivation has parameters (t alpha, t beta)."""
    p = DerivationParams.for_algebra(e3, 1, 2).scaled(Fraction(1, 2))
    assert p.to_dict() == {"alpha": "1/2", "beta": "1", "case": "empty_IA"}


def test_bracket_trivial_cases(e3: EvolutionAlgebra) -> None:
    """A map commutes with itself, and diagonal maps commute."""
    d_alpha, _ = derivation_space(e3).basis
    assert lie_bracket(d_alpha, d_alpha) == LinearMap.zero(3, Q)
    diagonal = LinearMap(Q, ((2, 0, 0), (0, 3, 0), (0, 0, 5)))
    assert lie_bracket(diagonal, LinearMap.identity(3, Q)) == LinearMap.zero(3, Q)
