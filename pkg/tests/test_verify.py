"""Test cases for the verify module."""

import pytest

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.config import VerifySettings
from evolgebra.numeric import FieldTag
from evolgebra.verify import CLASSIFIED_CHECKS
from evolgebra.verify import FAIL
from evolgebra.verify import PASS
from evolgebra.verify import SKIPPED
from evolgebra.verify import run_suite


SMALL = VerifySettings(seed=3, samples=4, banach_samples=200, ode_steps=2000)

NAMES = [
    "rank_identity",
    "maximal_nilpotency",
    "submultiplicativity",
    "derivations",
    "automorphisms",
    "exp_oracle",
    "subgroup_closure",
    "normality",
    "quotient_index",
    "ode_cross_check",
    "corner_isomorphisms",
    "group_isomorphisms",
]


# # #      T E S T S     # # #


@pytest.mark.parametrize("fixture", ["e3", "e4", "e4_empty", "e3_real"])
def test_suite_passes(fixture: str, request: pytest.FixtureRequest) -> None:
    """Every check passes on the classified examples."""
    E = request.getfixturevalue(fixture)
    report = run_suite(E, SMALL)
    failed = [c.name for c in report.checks if c.status == FAIL]
    assert failed == []
    assert report.passed
    assert [c.name for c in report.checks] == NAMES
    assert all(c.status == PASS for c in report.checks)


def test_suite_complex(e5_eta4: EvolutionAlgebra) -> None:
    """Over C the ODE check is skipped and the rest pass."""
    report = run_suite(e5_eta4.astype(FieldTag.COMPLEX), SMALL)
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["ode_cross_check"] == SKIPPED
    assert report.passed
    quotient = next(c for c in report.checks if c.name == "quotient_index")
    assert quotient.detail["index"] == 4


def test_unclassified_algebra() -> None:
    """Classified checks are skipped, not failed."""
    E = EvolutionAlgebra.from_rows([[1, 0], [0, 0]], FieldTag.RATIONAL)
    report = run_suite(E, SMALL)
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["rank_identity"] == PASS
    assert statuses["maximal_nilpotency"] == SKIPPED
    assert all(statuses[name] == SKIPPED for name in CLASSIFIED_CHECKS)
    assert report.passed


def test_report_layout(e3: EvolutionAlgebra) -> None:
    """Seed, counts, tolerances and notes travel with the checks."""
    data = run_suite(e3, SMALL).to_dict()
    assert data["seed"] == 3
    assert data["counts"] == {"pass": len(NAMES), "fail": 0, "skipped": 0}
    assert "exp_oracle" in data["tolerances"]
    assert "lambda" in data["notes"]


def test_deterministic(e3: EvolutionAlgebra) -> None:
    """The same seed gives the same report."""
    assert run_suite(e3, SMALL).to_dict() == run_suite(e3, SMALL).to_dict()


@pytest.mark.parametrize("interior", [False, True], ids=["empty", "nonempty"])
def test_suite_dimension_six(interior: bool) -> None:
    """Every check passes in dimension 6, where e^d reaches e^64."""
    rows = [[0.0] * 6 for _ in range(6)]
    for i in range(5):
        rows[i][i + 1] = 1.0
        rows[i][5] = 1.0
    if interior:
        rows[0][2] = 1.0
    report = run_suite(EvolutionAlgebra.from_rows(rows, FieldTag.REAL), SMALL)
    failed = [c.name for c in report.checks if c.status == FAIL]
    assert failed == []
    assert [c.name for c in report.checks] == NAMES
    assert all(c.status == PASS for c in report.checks)
