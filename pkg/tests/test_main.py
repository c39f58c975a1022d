"""Test cases for the __main__ module."""

import json
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict

import pytest
from click.testing import CliRunner

from evolgebra import __main__
from evolgebra.config import CONFIG_ENV


E3_ROWS = [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
E4_ROWS = [[0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]

SMALL_CONFIG = """
[verify]
seed = 3
samples = 3
banach_samples = 200
ode_steps = 2000
"""


@pytest.fixture
def runner() -> CliRunner:
    """Fixture for invoking command-line interfaces."""
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep the user configuration out of the tests."""
    monkeypatch.setenv(CONFIG_ENV, str(tmp_path / "absent.toml"))


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    """A config with small sample counts."""
    path = tmp_path / "config.toml"
    path.write_text(SMALL_CONFIG)
    return path


def invoke(runner: CliRunner, *args: Any) -> Any:
    """Run the CLI with string arguments."""
    return runner.invoke(__main__.main, [str(a) for a in args])


def read_report(path: Path) -> Dict[str, Any]:
    """Load a JSON report written with --out."""
    return json.loads(path.read_text())


def stdout_report(output: str) -> Dict[str, Any]:
    """Cut the JSON report out of output that may also hold log lines."""
    lines = output.splitlines()
    start = lines.index("{")
    end = len(lines) - lines[::-1].index("}")
    return json.loads("\n".join(lines[start:end]))


# # #      T E S T S     # # #


def test_main_succeeds(runner: CliRunner) -> None:
    """It exits with a status code of zero."""
    result = invoke(runner, "--help")
    assert result.exit_code == 0
    assert "classify" in result.output


def test_main_hello(runner: CliRunner) -> None:
    """It exits with a status code of zero."""
    result = runner.invoke(__main__.hello)
    assert result.exit_code == 0
    assert "evolgebra" in result.output


def test_classify(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """The structural summary of E3."""
    out = tmp_path / "report.json"
    algebra = write_algebra(E3_ROWS)
    result = invoke(runner, "classify", "--algebra", algebra, "--out", out)
    assert result.exit_code == 0
    report = read_report(out)
    assert report["command"] == "classify"
    assert report["results"] == {
        "dimension": 3,
        "canonical": True,
        "rank": 2,
        "nilpotency_index": 5,
        "I_A": [],
        "eta": None,
        "classified": True,
        "case": "empty_IA",
        "gamma": "2",
    }


def test_classify_stdout(runner: CliRunner, write_algebra: Callable[..., Path]) -> None:
    """Without --out the report goes to standard output."""
    result = invoke(runner, "classify", "--algebra", write_algebra(E4_ROWS))
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["results"]["I_A"] == [[1, 3]]
    assert report["results"]["eta"] == 2


def test_derive_power(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """d^3 for alpha = beta = 1 on E3."""
    out = tmp_path / "derive.json"
    result = invoke(
        runner,
        "derive",
        "--algebra",
        write_algebra(E3_ROWS),
        "--alpha",
        "1",
        "--beta",
        "1",
        "--m",
        3,
        "--out",
        out,
    )
    assert result.exit_code == 0
    results = read_report(out)["results"]
    assert results["dimension"] == 2
    assert results["derivation"]["is_derivation"] is True
    assert results["power"]["matrix"] == [
        ["1", "0", "21"],
        ["0", "8", "-56"],
        ["0", "0", "64"],
    ]
    assert results["power"]["matches_repeated_product"] is True


def test_derive_invalid_alpha(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """alpha != 0 is refused when I_A is nonempty."""
    out = tmp_path / "derive.json"
    algebra = write_algebra(E4_ROWS)
    args = ["derive", "--algebra", algebra, "--alpha", "1", "--out", out]
    result = invoke(runner, *args)
    assert result.exit_code == 1
    assert read_report(out)["error"]["type"] == "InvalidParameterError"


def test_aut(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """The sign flip is an automorphism of E4."""
    out = tmp_path / "aut.json"
    algebra = write_algebra(E4_ROWS)
    result = invoke(
        runner, "aut", "--algebra", algebra, "--alpha=-1", "--beta", "5", "--out", out
    )
    assert result.exit_code == 0
    results = read_report(out)["results"]
    assert results["eta"] == 2
    assert results["roots"] == ["1", "-1"]
    assert results["automorphism"]["matrix"][0] == ["-1", "0", "0", "5"]
    assert results["automorphism"]["is_automorphism"] is True
    assert results["quotient"]["index"] == 2


def test_aut_not_a_root(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """alpha = 2 is not a square root of unity."""
    out = tmp_path / "aut.json"
    algebra = write_algebra(E4_ROWS)
    result = invoke(runner, "aut", "--algebra", algebra, "--alpha=2", "--out", out)
    assert result.exit_code == 1
    report = read_report(out)
    assert report["error"]["type"] == "InvalidParameterError"
    assert report["results"]["eta"] == 2


def test_exp(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """I + E_14 on E4, promoted to the reals."""
    out = tmp_path / "exp.json"
    algebra = write_algebra(E4_ROWS)
    result = invoke(runner, "exp", "--algebra", algebra, "--beta", "1", "--out", out)
    assert result.exit_code == 0
    report = read_report(out)
    assert report["results"]["diff"] == 0.0
    assert report["results"]["in_exp_der"] is True
    assert report["results"]["closed_form"][0] == ["1.0", "0.0", "0.0", "1.0"]
    assert report["warnings"]


def test_exp_decimal_alpha(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """Decimal parameters are read in the real backend."""
    out = tmp_path / "exp.json"
    algebra = write_algebra(E3_ROWS)
    args = ["exp", "--algebra", algebra, "--alpha", "0.5", "--beta", "2", "--out", out]
    result = invoke(runner, *args)
    assert result.exit_code == 0
    assert read_report(out)["results"]["diff"] < 1e-9


def test_verify(
    runner: CliRunner,
    write_algebra: Callable[..., Path],
    config_file: Path,
    tmp_path: Path,
) -> None:
    """The suite passes on E3 and is reproducible."""
    algebra = write_algebra(E3_ROWS)
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for out in (first, second):
        args = ["verify", "--algebra", algebra, "--config", config_file]
        result = invoke(runner, *args, "--out", out)
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()
    report = read_report(first)
    assert report["inputs"]["seed"] == 3
    assert report["results"]["passed"] is True
    assert report["results"]["counts"]["fail"] == 0


def test_verify_seed_option(
    runner: CliRunner,
    write_algebra: Callable[..., Path],
    config_file: Path,
    tmp_path: Path,
) -> None:
    """--seed overrides the configured seed."""
    out = tmp_path / "verify.json"
    algebra = write_algebra(E4_ROWS)
    args = ["verify", "--algebra", algebra, "--config", config_file, "--seed", 11]
    result = invoke(runner, *args, "--out", out)
    assert result.exit_code == 0
    assert read_report(out)["results"]["seed"] == 11


@pytest.mark.parametrize(
    "args",
    [
        ["classify"],
        ["classify", "--algebra", "missing.json"],
        ["classify", "--algebra", "{algebra}", "--field", "octonion"],
        ["derive", "--algebra", "{algebra}", "--m", "three"],
    ],
)
def test_usage_errors(
    runner: CliRunner, write_algebra: Callable[..., Path], args: list
) -> None:
    """Bad options exit with 2."""
    algebra = str(write_algebra(E3_ROWS))
    result = invoke(runner, *[a.format(algebra=algebra) for a in args])
    assert result.exit_code == 2


def test_parse_error(runner: CliRunner, tmp_path: Path) -> None:
    """A malformed document exits with 1 and names the error."""
    algebra = tmp_path / "broken.json"
    algebra.write_text('{"dimension": 2,\n "field": "real",\n')
    out = tmp_path / "report.json"
    result = invoke(runner, "classify", "--algebra", algebra, "--out", out)
    assert result.exit_code == 1
    assert read_report(out)["error"]["type"] == "AlgebraParseError"


def test_not_classified(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """Algebras outside canonical form have no Der(E) closed form."""
    out = tmp_path / "report.json"
    algebra = write_algebra([[1, 0], [0, 0]])
    result = invoke(runner, "derive", "--algebra", algebra, "--out", out)
    assert result.exit_code == 1
    assert read_report(out)["error"]["type"] == "NotClassifiedError"


def test_ode_csv(runner: CliRunner, write_algebra: Callable[..., Path]) -> None:
    """Without --trajectory the trajectory is printed as CSV."""
    algebra = write_algebra(E3_ROWS, field="real")
    result = invoke(runner, "ode", "--algebra", algebra, "--steps", 10, "--t", 2)
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "t,x1,x2,x3"
    assert len(lines) == 12
    assert lines[1].startswith("0,1,1,1")


def test_ode_csv_with_report(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """--out still names the report while the CSV goes to standard output."""
    out = tmp_path / "report.json"
    algebra = write_algebra(E3_ROWS, field="real")
    args = ["ode", "--algebra", algebra, "--steps", 10, "--out", out]
    result = invoke(runner, *args)
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "t,x1,x2,x3"
    report = read_report(out)
    assert report["results"]["rows"] == 11
    assert report["results"]["trajectory"] is None


def test_ode_trajectory(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """--trajectory writes the file and the summary is the report."""
    algebra = write_algebra(E3_ROWS)
    csv_path = tmp_path / "trajectory.csv"
    args = ["ode", "--algebra", algebra, "--alpha", "0.3", "--steps", 50]
    result = invoke(runner, *args, "--x0", "1,0,0.5", "--trajectory", csv_path)
    assert result.exit_code == 0
    summary = json.loads(result.output)
    assert summary["results"]["rows"] == 51
    assert summary["results"]["max_abs_diff"] < 1e-6
    assert len(csv_path.read_text().splitlines()) == 52

    out = tmp_path / "report.json"
    xlsx_path = tmp_path / "trajectory.xlsx"
    result = invoke(runner, *args, "--trajectory", xlsx_path, "--out", out)
    assert result.exit_code == 0
    assert xlsx_path.exists()
    assert read_report(out)["results"]["trajectory"] == str(xlsx_path)


def test_ode_complex(
    runner: CliRunner, write_algebra: Callable[..., Path], tmp_path: Path
) -> None:
    """The ODE is solved over the reals only."""
    path = tmp_path / "trajectory.csv"
    algebra = write_algebra(E3_ROWS, field="complex")
    result = invoke(runner, "ode", "--algebra", algebra, "--trajectory", path)
    assert result.exit_code == 1
    assert not path.exists()


def test_ode_csv_failure_keeps_warnings(
    runner: CliRunner, write_algebra: Callable[..., Path]
) -> None:
    """A failed CSV run reports the near-zero entries like any other command."""
    rows = [[0, 1, "1e-9", 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
    algebra = write_algebra(rows, field="real")
    result = invoke(runner, "ode", "--algebra", algebra, "--alpha", "0.3")
    assert result.exit_code == 1
    report = stdout_report(result.output)
    assert report["error"]["type"] == "InvalidParameterError"
    assert any(w.startswith("a_13") for w in report["warnings"])


def test_config(runner: CliRunner, tmp_path: Path) -> None:
    """--init writes the defaults, which then display."""
    path = tmp_path / "config.toml"
    result = invoke(runner, "config", "--init", "--config", path)
    assert result.exit_code == 0
    assert path.exists()
    result = invoke(runner, "config", "--config", path)
    assert result.exit_code == 0
    assert "[verify]" in result.output
    assert "seed = 7" in result.output
