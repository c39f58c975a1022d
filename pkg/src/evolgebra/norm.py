"""The gamma-norm, which turns every evolution algebra into a Banach algebra.

gamma is the largest absolute column sum of the structural matrix and the
norm of x is gamma times its largest absolute coordinate. Rational algebras
get exact rational values.
"""

import logging
from dataclasses import dataclass

import numpy as np

from evolgebra.algebra import ElementLike
from evolgebra.algebra import EvolutionAlgebra
from evolgebra.errors import DegenerateNormError
from evolgebra.errors import DimensionMismatchError
from evolgebra.errors import DomainError
from evolgebra.linalg import LinearMap
from evolgebra.numeric import SUBMULT_SLACK
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GammaNorm:
    """The gamma constant of an algebra, with the norms it induces."""

    gamma: Number
    algebra: EvolutionAlgebra

    @classmethod
    def of(cls, algebra: EvolutionAlgebra) -> "GammaNorm":
        """Compute gamma and refuse the degenerate zero algebra.

        Raises:
            DegenerateNormError: gamma is zero, so the formula is not a norm.
        """
        value = gamma(algebra)
        if value == 0:
            raise DegenerateNormError(
                "gamma is 0 (zero structural matrix); "
                "the gamma-norm vanishes identically"
            )
        return cls(value, algebra)

    def __call__(self, x: ElementLike) -> Number:
        """The gamma-norm of an element."""
        x = self.algebra.element(x)
        return self.gamma * max(abs(v) for v in x.coords)


def gamma(E: EvolutionAlgebra) -> Number:
    """Largest absolute column sum of the structural matrix.

    >>> from fractions import Fraction
    >>> E = EvolutionAlgebra.from_rows(
    ...     [[0, 1, 1], [0, 0, 1], [0, 0, 0]], FieldTag.RATIONAL
    ... )
    >>> gamma(E)
    Fraction(2, 1)
    """
    columns = zip(*E.structure.rows)
    return max(sum((abs(v) for v in col), abs(E.field.zero)) for col in columns)


def norm_gamma(E: EvolutionAlgebra, x: ElementLike) -> Number:
    """gamma times the largest absolute coordinate of x."""
    return GammaNorm.of(E)(x)


def operator_norm(E: EvolutionAlgebra, M: LinearMap) -> Number:
    """The operator norm of ``x -> M @ x`` induced by the gamma-norm.

    The gamma-norm is a positive multiple of the max-coordinate norm, so
    the induced norm is the largest absolute row sum of M and gamma
    cancels out. It is still required to be nonzero.
    """
    GammaNorm.of(E)
    if M.n != E.n:
        raise DimensionMismatchError(
            f"map of size {M.n} on an algebra of dimension {E.n}"
        )
    return max(sum((abs(v) for v in row), abs(M.field.zero)) for row in M.rows)


@dataclass(frozen=True)
class SubmultiplicativityReport:
    """Outcome of a sampled check of ||xy|| <= ||x|| ||y||."""

    samples: int
    violations: int
    worst_ratio: float


def check_submultiplicative(
    E: EvolutionAlgebra, sample_count: int, seed: int
) -> SubmultiplicativityReport:
    """Sample element pairs and count violations of the Banach inequality.

    Coordinates are drawn uniformly from [-1, 1] (both parts for complex
    algebras) with a seeded generator, so the result is reproducible. A
    pair whose norm product is zero has ratio 0.
    """
    if sample_count < 1:
        raise DomainError(f"sample_count must be positive, got {sample_count}")
    g = float(GammaNorm.of(E).gamma)
    rng = np.random.default_rng(seed)
    A = E.structure.to_array()

    x = rng.uniform(-1.0, 1.0, size=(sample_count, E.n))
    y = rng.uniform(-1.0, 1.0, size=(sample_count, E.n))
    if E.field is FieldTag.COMPLEX:
        x = x + 1j * rng.uniform(-1.0, 1.0, size=(sample_count, E.n))
        y = y + 1j * rng.uniform(-1.0, 1.0, size=(sample_count, E.n))

    xy = (x * y) @ A
    norm_xy = g * np.abs(xy).max(axis=1)
    bound = (g * np.abs(x).max(axis=1)) * (g * np.abs(y).max(axis=1))

    violations = int(np.count_nonzero(norm_xy > bound + SUBMULT_SLACK))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(bound > 0, norm_xy / bound, 0.0)
    worst = float(ratios.max())
    logger.debug(
        "submultiplicativity: %d samples, %d violations, worst ratio %.6g",
        sample_count,
        violations,
        worst,
    )
    return SubmultiplicativityReport(sample_count, violations, worst)
