"""The linear system x' = D x driven by a derivation.

Solutions are x(t) = e^(tD) x(0). :func:`solve_closed` evaluates that with
the closed-form exponential of the scaled derivation tD, and
:func:`solve_numeric` integrates the system with the classical fourth
order Runge-Kutta scheme as an independent check.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List
from typing import Optional
from typing import Union

import numpy as np
import pandas as pd

from evolgebra.algebra import Element
from evolgebra.algebra import ElementLike
from evolgebra.algebra import EvolutionAlgebra
from evolgebra.derivations import DerivationParams
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import DomainError
from evolgebra.errors import UnsupportedBackendError
from evolgebra.expgroup import exp_derivation_closed
from evolgebra.linalg import LinearMap
from evolgebra.numeric import FieldTag


logger = logging.getLogger(__name__)

# Butcher tableau of the classical RK4 scheme.
RK4_A = np.array(
    [
        [0.0, 0.0, 0.0, 0.0],
        [0.5, 0.0, 0.0, 0.0],
        [0.0, 0.5, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)
RK4_B = np.array([1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6])


@dataclass(frozen=True)
class Trajectory:
    """Sampled states x(t_0), ..., x(t_m) with strictly increasing times."""

    times: List[float]
    states: List[Element]

    def __post_init__(self) -> None:
        """Check the two lists line up."""
        if len(self.times) != len(self.states):
            raise DimensionMismatchError(
                f"{len(self.times)} times for {len(self.states)} states"
            )
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise DomainError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> Element:
        """The last recorded state."""
        return self.states[-1]

    def to_frame(self) -> pd.DataFrame:
        """One row per time, columns ``t, x1, ..., xn``."""
        n = self.states[0].n if self.states else 0
        frame = pd.DataFrame(
            [list(state.coords) for state in self.states],
            columns=[f"x{i}" for i in range(1, n + 1)],
        )
        frame.insert(0, "t", self.times)
        return frame

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> Optional[str]:
        """Write comma-separated rows, or return them when no path is given."""
        return self.to_frame().to_csv(path, index=False, float_format="%.17g")

    def to_excel(self, path: Union[str, Path]) -> None:
        """Write an Excel workbook with a single ``trajectory`` sheet."""
        self.to_frame().to_excel(
            path, sheet_name="trajectory", index=False, engine="openpyxl"
        )


def _require_real(E: EvolutionAlgebra) -> None:
    if E.field is not FieldTag.REAL:
        raise UnsupportedBackendError(
            f"the ODE solvers need the real backend, got {E.field.value}"
        )


def solve_closed(
    E: EvolutionAlgebra, params: DerivationParams, x0: ElementLike, t: float
) -> Element:
    """x(t) = e^(tD) x(0), with e^(tD) from the closed form at (t alpha, t beta)."""
    _require_real(E)
    x0 = E.element(x0)
    if t == 0:
        return x0
    flow = exp_derivation_closed(E, params.scaled(float(t))).matrix
    return Element(E.field, flow.matvec(x0.coords))


def solve_numeric(
    E: EvolutionAlgebra, D: LinearMap, x0: ElementLike, t_end: float, steps: int
) -> Trajectory:
    """Integrate x' = D x on [0, t_end] with ``steps`` fixed RK4 steps.

    Every step is recorded, so the trajectory holds ``steps + 1`` states.

    Raises:
        DomainError: steps < 1 or t_end <= 0.
    """
    _require_real(E)
    if steps < 1:
        raise DomainError(f"steps must be at least 1, got {steps}")
    if t_end <= 0:
        raise DomainError(f"t_end must be positive, got {t_end}")
    if D.n != E.n:
        raise DimensionMismatchError(
            f"map of size {D.n} on an algebra of dimension {E.n}"
        )
    x0 = E.element(x0)

    A = D.to_array()
    h = float(t_end) / steps
    y = np.array(x0.coords, dtype=float)
    K = np.zeros((E.n, len(RK4_B)))
    states = np.empty((steps + 1, E.n))
    states[0] = y
    for step in range(1, steps + 1):
        K[:, 0] = A @ y
        for s in range(1, len(RK4_B)):
            K[:, s] = A @ (y + h * (K[:, :s] @ RK4_A[s, :s]))
        y = y + h * (K @ RK4_B)
        states[step] = y
    logger.debug("RK4: %d steps of size %.3g", steps, h)

    times = [step * h for step in range(steps)] + [float(t_end)]
    return Trajectory(
        times, [Element(E.field, tuple(float(v) for v in row)) for row in states]
    )
