"""Algebras used across the test modules."""

import json
from pathlib import Path
from typing import Callable

import pytest

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.numeric import FieldTag


E3_ROWS = [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
E4_ROWS = [[0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
E4_EMPTY_ROWS = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
# I_A = {(2, 4)}, so eta = 2^3 - 2^2 = 4
E5_ETA4_ROWS = [
    [0, 1, 0, 0, 1],
    [0, 0, 1, 1, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0],
]


@pytest.fixture
def e3() -> EvolutionAlgebra:
    """n = 3 with a12 = a13 = a23 = 1; I_A is empty."""
    return EvolutionAlgebra.from_rows(E3_ROWS, FieldTag.RATIONAL, "E3")


@pytest.fixture
def e3_real(e3: EvolutionAlgebra) -> EvolutionAlgebra:
    """E3 over the reals."""
    return e3.astype(FieldTag.REAL)


@pytest.fixture
def e3_complex(e3: EvolutionAlgebra) -> EvolutionAlgebra:
    """E3 over the complexes."""
    return e3.astype(FieldTag.COMPLEX)


@pytest.fixture
def e4() -> EvolutionAlgebra:
    """n = 4 with a13 = 1, so I_A = {(1, 3)} and eta = 2."""
    return EvolutionAlgebra.from_rows(E4_ROWS, FieldTag.RATIONAL, "E4")


@pytest.fixture
def e4_empty() -> EvolutionAlgebra:
    """E4 with a13 = 0."""
    return EvolutionAlgebra.from_rows(E4_EMPTY_ROWS, FieldTag.RATIONAL, "E4'")


@pytest.fixture
def e5_eta4() -> EvolutionAlgebra:
    """n = 5 with eta = 4."""
    return EvolutionAlgebra.from_rows(E5_ETA4_ROWS, FieldTag.RATIONAL, "E5")


@pytest.fixture
def write_algebra(tmp_path: Path) -> Callable[..., Path]:
    """Write an algebra document and return its path."""

    def _write(rows: list, field: str = "rational", name: str = "doc.json") -> Path:
        path = tmp_path / name
        document = {
            "dimension": len(rows),
            "field": field,
            "matrix": [[str(v) for v in row] for row in rows],
        }
        path.write_text(json.dumps(document))
        return path

    return _write
