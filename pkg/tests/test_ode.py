"""Test cases for the ode module."""

import math
from pathlib import Path
from typing import Sequence

import hypothesis.strategies as st
import pandas as pd
import pytest
from hypothesis import given
from hypothesis import settings

from evolgebra.algebra import Element
from evolgebra.algebra import EvolutionAlgebra
from evolgebra.derivations import Case
from evolgebra.derivations import DerivationParams
from evolgebra.derivations import build_derivation
from evolgebra.derivations import classification_case
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import DomainError
from evolgebra.errors import UnsupportedBackendError
from evolgebra.linalg import LinearMap
from evolgebra.numeric import FieldTag
from evolgebra.ode import Trajectory
from evolgebra.ode import solve_closed
from evolgebra.ode import solve_numeric
from tests.strategies import canonical_algebras


R = FieldTag.REAL


def max_error(x: Element, y: Sequence[float]) -> float:
    """Largest coordinate difference."""
    return max(abs(a - b) for a, b in zip(x.coords, y))


# # #      T E S T S     # # #


def test_time_zero(e3_real: EvolutionAlgebra) -> None:
    """x(0) = x0."""
    params = DerivationParams.for_algebra(e3_real, 0.7, -2.0)
    x0 = e3_real.element([1.0, 2.0, 3.0])
    assert solve_closed(e3_real, params, x0, 0.0) == x0


def test_corner_flow(e3_real: EvolutionAlgebra) -> None:
    """With alpha = 0 and beta = 1, e1 is fixed and e3 drifts along e1."""
    params = DerivationParams.for_algebra(e3_real, 0.0, 1.0)
    assert solve_closed(e3_real, params, [1.0, 0.0, 0.0], 2.5).coords == (1, 0, 0)
    assert solve_closed(e3_real, params, [0.0, 0.0, 1.0], 2.5).coords == (2.5, 0, 1)
    zero = DerivationParams.for_algebra(e3_real, 0.0, 0.0)
    assert solve_closed(e3_real, zero, [4.0, -1.0, 2.0], 9.0).coords == (4, -1, 2)


def test_scalar_equations() -> None:
    """D = diag(1, 2) in dimension 2 decouples into x' = x and y' = 2y."""
    E = EvolutionAlgebra.from_rows([[0.0, 1.0], [0.0, 0.0]], R)
    params = DerivationParams.for_algebra(E, 1.0, 0.0)
    expected = (math.e, math.e**2)
    assert max_error(solve_closed(E, params, [1.0, 1.0], 1.0), expected) < 1e-12
    D = build_derivation(E, params)
    trajectory = solve_numeric(E, D, [1.0, 1.0], 1.0, 1000)
    assert max_error(trajectory.final, expected) < 1e-8
    assert trajectory.times[-1] == 1.0


def test_numeric_errors(e3: EvolutionAlgebra, e3_real: EvolutionAlgebra) -> None:
    """Positive steps and horizon, real algebras, matching sizes."""
    D = LinearMap.zero(3, R)
    with pytest.raises(DomainError):
        solve_numeric(e3_real, D, [1, 0, 0], 1.0, 0)
    with pytest.raises(DomainError):
        solve_numeric(e3_real, D, [1, 0, 0], 0.0, 10)
    with pytest.raises(DimensionMismatchError):
        solve_numeric(e3_real, LinearMap.zero(2, R), [1, 0, 0], 1.0, 10)
    with pytest.raises(UnsupportedBackendError):
        solve_numeric(e3, LinearMap.zero(3, FieldTag.RATIONAL), [1, 0, 0], 1.0, 10)
    with pytest.raises(UnsupportedBackendError):
        params = DerivationParams.for_algebra(e3, 0, 1)
        solve_closed(e3, params, [1, 0, 0], 1.0)


def test_trajectory_validation() -> None:
    """Times and states line up and times increase."""
    state = Element(R, (0.0, 0.0))
    with pytest.raises(DimensionMismatchError):
        Trajectory([0.0, 1.0], [state])
    with pytest.raises(DomainError):
        Trajectory([0.0, 0.0], [state, state])


@settings(max_examples=10, deadline=None)
@given(
    canonical_algebras(sizes=st.integers(2, 5), field=R),
    st.floats(-1.0, 1.0),
    st.floats(-2.0, 2.0),
    st.lists(st.floats(-1.0, 1.0), min_size=5, max_size=5),
)
def test_solvers_agree(
    E: EvolutionAlgebra, alpha: float, beta: float, x0: list
) -> None:
    """RK4 tracks the closed-form flow."""
    if classification_case(E) is Case.NONEMPTY_IA:
        alpha = 0.0
    params = DerivationParams.for_algebra(E, alpha, beta)
    x0 = x0[: E.n]
    closed = solve_closed(E, params, x0, 1.0)
    numeric = solve_numeric(E, build_derivation(E, params), x0, 1.0, 2000)
    scale = max(1.0, max(abs(v) for v in closed.coords))
    assert max_error(closed, numeric.final.coords) <= 1e-6 * scale


def test_rk4_order(e3_real: EvolutionAlgebra) -> None:
    """Halving the step divides the error by about 16."""
    params = DerivationParams.for_algebra(e3_real, 0.5, 1.0)
    D = build_derivation(e3_real, params)
    x0 = [1.0, 1.0, 1.0]
    exact = solve_closed(e3_real, params, x0, 1.0)
    coarse = max_error(exact, solve_numeric(e3_real, D, x0, 1.0, 50).final.coords)
    fine = max_error(exact, solve_numeric(e3_real, D, x0, 1.0, 100).final.coords)
    assert math.log2(coarse / fine) == pytest.approx(4.0, abs=0.3)


def test_flow_property(e3_real: EvolutionAlgebra) -> None:
    """Flowing for s and then u is flowing for s + u."""
    params = DerivationParams.for_algebra(e3_real, -0.4, 1.5)
    x0 = [0.5, -1.0, 2.0]
    halfway = solve_closed(e3_real, params, x0, 0.7)
    two_steps = solve_closed(e3_real, params, halfway, 0.8)
    one_step = solve_closed(e3_real, params, x0, 1.5)
    assert max_error(two_steps, one_step.coords) < 1e-12


def test_csv(e3_real: EvolutionAlgebra) -> None:
    """A header and one row per recorded state."""
    D = build_derivation(e3_real, DerivationParams.for_algebra(e3_real, 0.1, 1.0))
    trajectory = solve_numeric(e3_real, D, [1.0, 0.0, 0.0], 2.0, 20)
    assert len(trajectory) == 21
    lines = trajectory.to_csv().splitlines()
    assert lines[0] == "t,x1,x2,x3"
    assert len(lines) == 22


def test_excel(e3_real: EvolutionAlgebra, tmp_path: Path) -> None:
    """The workbook has a single trajectory sheet."""
    D = build_derivation(e3_real, DerivationParams.for_algebra(e3_real, 0.1, 1.0))
    trajectory = solve_numeric(e3_real, D, [1.0, 0.0, 0.0], 2.0, 10)
    path = tmp_path / "trajectory.xlsx"
    trajectory.to_excel(path)
    frame = pd.read_excel(path, sheet_name="trajectory")
    assert list(frame.columns) == ["t", "x1", "x2", "x3"]
    assert len(frame) == 11
    assert frame["t"].iloc[-1] == pytest.approx(2.0)
