"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction
from typing import Any
from typing import Callable
from typing import List
from typing import Tuple

import hypothesis.strategies as st

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Number


QUARTERS = st.integers(-8, 8)
NONZERO_QUARTERS = QUARTERS.filter(lambda k: k != 0)


def _scalar(draw: Callable[..., Any], k: int, field: FieldTag) -> Number:
    if field is FieldTag.RATIONAL:
        return Fraction(k, 4)
    if field is FieldTag.REAL:
        return k / 4
    return complex(k / 4, draw(QUARTERS) / 4)


def interior_pairs(n: int) -> List[Tuple[int, int]]:
    """The positions (i, j) with i + 1 < j < n."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n)]


@st.composite
def canonical_algebras(
    draw: Callable[..., Any],
    sizes: st.SearchStrategy[int] = st.integers(2, 5),
    field: FieldTag = FieldTag.RATIONAL,
    interior: str = "any",
) -> EvolutionAlgebra:
    """Strictly upper triangular algebras with a nonzero superdiagonal.

    Entries are multiples of 1/4 in [-2, 2]. ``interior`` is ``"any"``,
    ``"empty"`` (every interior entry zero) or ``"nonempty"`` (at least one
    nonzero, which needs n >= 4).
    """
    n = draw(sizes)
    if interior == "nonempty":
        n = max(n, 4)
    pairs = interior_pairs(n)
    forced = draw(st.sampled_from(pairs)) if interior == "nonempty" else None

    rows = [[field.zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j == i + 1 or (i, j) == forced:
                k = draw(NONZERO_QUARTERS)
            elif (i, j) in pairs and interior == "empty":
                continue
            else:
                k = draw(QUARTERS)
            rows[i - 1][j - 1] = _scalar(draw, k, field)
    return EvolutionAlgebra.from_rows(rows, field)
