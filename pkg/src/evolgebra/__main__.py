"""Command-line interface."""

import logging
from dataclasses import dataclass
from importlib.metadata import version
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import Optional

import click
import toml
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table
from rich.traceback import install

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.automorphisms import AutomorphismParams
from evolgebra.automorphisms import build_automorphism
from evolgebra.automorphisms import eta
from evolgebra.automorphisms import is_automorphism
from evolgebra.automorphisms import phi_entries
from evolgebra.automorphisms import roots_of_unity
from evolgebra.config import Config
from evolgebra.config import config_path
from evolgebra.config import load_config
from evolgebra.config import write_default_config
from evolgebra.derivations import Case
from evolgebra.derivations import DerivationParams
from evolgebra.derivations import build_derivation
from evolgebra.derivations import classification_case
from evolgebra.derivations import derivation_space
from evolgebra.derivations import index_set
from evolgebra.derivations import is_derivation
from evolgebra.derivations import require_classified
from evolgebra.document import Report
from evolgebra.document import algebra_warnings
from evolgebra.document import parse_algebra
from evolgebra.errors import EvolgebraError
from evolgebra.errors import UnsupportedBackendError
from evolgebra.expgroup import corner_matrix
from evolgebra.expgroup import derivation_power_closed
from evolgebra.expgroup import exp_derivation_closed
from evolgebra.expgroup import exp_series
from evolgebra.expgroup import membership_exp_der
from evolgebra.expgroup import quotient_report
from evolgebra.linalg import LinearMap
from evolgebra.norm import gamma
from evolgebra.numeric import CHECK_TOL
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Scalar
from evolgebra.ode import solve_closed
from evolgebra.ode import solve_numeric
from evolgebra.verify import FAIL
from evolgebra.verify import NOTES
from evolgebra.verify import PASS
from evolgebra.verify import run_suite


install()


__version__ = version("evolgebra")

err_console = Console(stderr=True)

FIELD_CHOICES = click.Choice([tag.value for tag in FieldTag])


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@dataclass(frozen=True)
class CommonOptions:
    """Options shared by every analysis command."""

    algebra: Path
    field: Optional[FieldTag]
    out: Optional[Path]
    tol: Optional[float]
    config: Optional[Path]
    verbose: bool


def common_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Attach the shared options to a command."""
    options = [
        click.option(
            "--algebra",
            required=True,
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="Algebra document (JSON, or TOML with a .toml suffix).",
        ),
        click.option(
            "--field", type=FIELD_CHOICES, help="Override the document field."
        ),
        click.option(
            "--out",
            type=click.Path(dir_okay=False, path_type=Path),
            help="Write the report here instead of standard output.",
        ),
        click.option("--tol", type=float, help="Tolerance override for the command."),
        click.option(
            "--config",
            type=click.Path(dir_okay=False, path_type=Path),
            help="Configuration file.",
        ),
        click.option("--verbose", "-v", is_flag=True, help="Log debug output."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _common(kwargs: Dict[str, Any]) -> CommonOptions:
    field = kwargs.pop("field")
    return CommonOptions(
        algebra=kwargs.pop("algebra"),
        field=FieldTag(field) if field else None,
        out=kwargs.pop("out"),
        tol=kwargs.pop("tol"),
        config=kwargs.pop("config"),
        verbose=kwargs.pop("verbose"),
    )


def _emit(report: Report, out: Optional[Path], indent: int) -> None:
    text = report.to_json(indent)
    if out is None:
        click.echo(text)
    else:
        out.write_text(text + "\n")


def _error_panel(exc: Exception) -> None:
    err_console.print(
        Panel(str(exc), title=f"[red]{type(exc).__name__}", width=100, style="red")
    )


Body = Callable[[EvolutionAlgebra, Config, Report], bool]


def _execute(
    name: str,
    opts: CommonOptions,
    inputs: Dict[str, Any],
    body: Body,
    report_out: Optional[Path] = None,
    quiet: bool = False,
) -> None:
    """Load config and algebra, run a command body, and emit its report.

    A body returns False to ask for exit code 1 with a complete report.
    Library errors land in the report and also exit with 1. A quiet run
    emits the report only when it fails, for bodies that print their own
    output.
    """
    _setup_logging(opts.verbose)
    report = Report(name, inputs={"algebra": opts.algebra.name, **inputs})
    indent = 2
    ok = True
    try:
        config = load_config(opts.config)
        indent = config.report.indent
        E = parse_algebra(opts.algebra, opts.field)
        report.inputs["field"] = E.field.value
        report.warnings.extend(algebra_warnings(E))
        ok = body(E, config, report)
    except EvolgebraError as exc:
        report.fail(exc)
        _error_panel(exc)
        ok = False
    if ok and quiet:
        return
    _emit(report, report_out, indent)
    if not ok:
        click.get_current_context().exit(1)


def _matrix(M: LinearMap) -> Any:
    return M.to_strings()


def _scalar(text: Optional[str], E: EvolutionAlgebra, default: str = "0") -> Scalar:
    return Scalar.parse(text if text is not None else default, E.field)


def _promote_real(E: EvolutionAlgebra, report: Report) -> EvolutionAlgebra:
    if E.field is FieldTag.RATIONAL:
        report.warnings.append("rational algebra promoted to real for exponentials")
        return E.astype(FieldTag.REAL)
    return E


@click.group()
@click.version_option()
def main() -> None:  # pragma: no cover
    """Evolgebra.

    A workbench for nilpotent evolution algebras of maximal nilpotency
    index: classification of derivations and automorphisms, the Banach
    gamma-norm, the exponential group exp(Der(E)) and the ODE x' = Dx.

    For more information, try: evolgebra hello
    """
    pass


@main.command()
def hello() -> None:
    """See information about evolgebra."""
    console = Console()
    console.print("Hello World!\n")
    console.print(
        "I am [spring_green3 italic]evolgebra.[/] "
        "Derivations, automorphisms and exponentials of evolution algebras."
    )
    console.print(f"Current Version: {__version__}\n")
    console.print(Panel(NOTES["eta"], title="[magenta]eta", width=100))


@main.command()
@click.option("--init", is_flag=True, help="Write the default configuration file.")
@click.option("--config", type=click.Path(dir_okay=False, path_type=Path))
def config(init: bool, config: Optional[Path]) -> None:
    """Show the configuration, or create it with --init."""
    if init:
        location = write_default_config(config)
        Console(stderr=True).print(f"Wrote default configuration to {location}")
        return
    try:
        settings = load_config(config)
    except EvolgebraError as exc:
        _error_panel(exc)
        click.get_current_context().exit(1)
    click.echo(f"# {settings.source or config_path(config)}")
    click.echo(toml.dumps(settings.to_dict()), nl=False)


@main.command()
@common_options
def classify(**kwargs: Any) -> None:
    """Canonical form, rank, nilpotency index, I_A and eta."""
    opts = _common(kwargs)

    def body(E: EvolutionAlgebra, config: Config, report: Report) -> bool:
        pairs = index_set(E)
        canonical = E.is_canonical_maximal()
        rank = E.rank_structural()
        classified = canonical and rank == E.n - 1
        report.results.update(
            {
                "dimension": E.n,
                "canonical": canonical,
                "rank": rank,
                "nilpotency_index": E.nilpotency_index(),
                "I_A": pairs.as_list(),
                "eta": eta(E).value if pairs else None,
                "classified": classified,
                "case": classification_case(E).value if classified else None,
                "gamma": E.field.format(gamma(E)),
            }
        )
        return True

    _execute("classify", opts, {}, body, opts.out)


@main.command()
@common_options
@click.option("--alpha", help="alpha of a derivation to build (scalar string).")
@click.option("--beta", help="beta of a derivation to build (scalar string).")
@click.option("--m", "power", type=int, help="Also give d^m in closed form.")
def derive(
    alpha: Optional[str], beta: Optional[str], power: Optional[int], **kwargs: Any
) -> None:
    """Der(E): case, dimension, basis, and optionally one derivation."""
    opts = _common(kwargs)
    inputs = {"alpha": alpha, "beta": beta, "m": power}

    def body(E: EvolutionAlgebra, config: Config, report: Report) -> bool:
        tol = opts.tol if opts.tol is not None else CHECK_TOL
        space = derivation_space(E)
        report.results.update(
            {
                "case": space.case.value,
                "dimension": space.dimension,
                "basis": [_matrix(D) for D in space.basis],
            }
        )
        if alpha is None and beta is None and power is None:
            return True

        params = DerivationParams.for_algebra(
            E, _scalar(alpha, E), _scalar(beta, E, "1")
        )
        d = build_derivation(E, params)
        ok = is_derivation(E, d, tol)
        report.results["derivation"] = {
            "params": params.to_dict(),
            "matrix": _matrix(d),
            "is_derivation": ok,
        }
        if power is not None:
            closed = derivation_power_closed(E, params, power)
            repeated = d
            for _ in range(power - 1):
                repeated = repeated @ d
            report.results["power"] = {
                "m": power,
                "matrix": _matrix(closed),
                "matches_repeated_product": closed.allclose(repeated, tol),
            }
        return ok

    _execute("derive", opts, inputs, body, opts.out)


@main.command()
@common_options
@click.option("--alpha", default="1", show_default=True, help="Diagonal parameter.")
@click.option("--beta", default="0", show_default=True, help="Corner parameter.")
def aut(alpha: str, beta: str, **kwargs: Any) -> None:
    """Aut(E): eta, the root-of-unity constraint and one automorphism."""
    opts = _common(kwargs)

    def body(E: EvolutionAlgebra, config: Config, report: Report) -> bool:
        tol = opts.tol if opts.tol is not None else CHECK_TOL
        require_classified(E)
        case = classification_case(E)
        results: Dict[str, Any] = {"case": case.value, "eta": None}
        if case is Case.NONEMPTY_IA:
            order = eta(E).value
            results["eta"] = order
            results["constraint"] = f"alpha^{order} = 1"
            results["roots"] = [str(r) for r in roots_of_unity(order, E.field)]
        else:
            results["constraint"] = "alpha != 0"
        report.results.update(results)

        params = AutomorphismParams.for_algebra(E, _scalar(alpha, E), _scalar(beta, E))
        M = build_automorphism(E, params)
        ok = is_automorphism(E, M, tol)
        quotient = quotient_report(E)
        report.results["automorphism"] = {
            "params": params.to_dict(),
            "matrix": _matrix(M),
            "phi": [E.field.format(v) for v in phi_entries(E, params.alpha)],
            "corner": _matrix(corner_matrix(M)),
            "is_automorphism": ok,
        }
        report.results["quotient"] = {
            "description": quotient.quotient_description,
            "index": quotient.index_text(),
        }
        return ok

    _execute("aut", opts, {"alpha": alpha, "beta": beta}, body, opts.out)


@main.command()
@common_options
@click.option("--alpha", default="0", show_default=True, help="Derivation alpha.")
@click.option("--beta", default="0", show_default=True, help="Derivation beta.")
def exp(alpha: str, beta: str, **kwargs: Any) -> None:
    """e^d by the closed form and by the series, with their difference."""
    opts = _common(kwargs)

    def body(E: EvolutionAlgebra, config: Config, report: Report) -> bool:
        R = _promote_real(E, report)
        params = DerivationParams.for_algebra(R, _scalar(alpha, R), _scalar(beta, R))
        tol = opts.tol if opts.tol is not None else config.exp.tol
        closed = exp_derivation_closed(R, params).matrix
        series = exp_series(R, build_derivation(R, params), tol)
        recovered = membership_exp_der(R, closed, config.exp.membership_tol)
        report.results.update(
            {
                "params": params.to_dict(),
                "closed_form": _matrix(closed),
                "series": _matrix(series.matrix),
                "terms_used": series.terms_used,
                "diff": closed.max_diff(series.matrix),
                "in_exp_der": recovered is not None,
            }
        )
        return True

    _execute("exp", opts, {"alpha": alpha, "beta": beta}, body, opts.out)


@main.command()
@common_options
@click.option("--seed", type=int, help="Seed for the random draws (config default 7).")
def verify(seed: Optional[int], **kwargs: Any) -> None:
    """Run the theorem suite and report pass/fail per check."""
    opts = _common(kwargs)

    def body(E: EvolutionAlgebra, config: Config, report: Report) -> bool:
        settings = config.verify
        if seed is not None:
            settings = type(settings)(**dict(vars(settings), seed=seed))
        exp_settings = config.exp
        if opts.tol is not None:
            exp_settings = type(exp_settings)(config.exp.tol, opts.tol)
        report.inputs["seed"] = settings.seed
        result = run_suite(E, settings, exp_settings)
        report.results.update(result.to_dict())

        table = Table(title="evolgebra verify", style="spring_green2")
        table.add_column("CHECK", style="spring_green3 italic")
        table.add_column("STATUS")
        colors = {PASS: "green", FAIL: "red"}
        for check in result.checks:
            color = colors.get(check.status, "yellow")
            table.add_row(check.name, f"[{color}]{check.status}")
        err_console.print(table)
        return result.passed

    _execute("verify", opts, {"seed": seed}, body, opts.out)


@main.command()
@common_options
@click.option("--alpha", default="0", show_default=True, help="Derivation alpha.")
@click.option("--beta", default="1", show_default=True, help="Derivation beta.")
@click.option("--t", "t_end", default=1.0, show_default=True, help="Final time.")
@click.option("--steps", type=int, help="RK4 steps (config default 10000).")
@click.option(
    "--x0", help="Initial state as comma-separated scalars (default all ones)."
)
@click.option(
    "--trajectory",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the trajectory here (Excel for .xlsx, CSV otherwise).",
)
def ode(
    alpha: str,
    beta: str,
    t_end: float,
    steps: Optional[int],
    x0: Optional[str],
    trajectory: Optional[Path],
    **kwargs: Any,
) -> None:
    """Integrate x' = Dx and export the trajectory.

    Without --trajectory the trajectory is printed as CSV with header
    t,x1,...,xn. With it the trajectory goes to that file and a JSON
    summary comparing the closed form and RK4 is emitted like any other
    report, to --out or standard output.
    """
    opts = _common(kwargs)
    inputs = {"alpha": alpha, "beta": beta, "t": t_end, "steps": steps, "x0": x0}

    def body(E: EvolutionAlgebra, config: Config, report: Report) -> bool:
        if E.field is FieldTag.COMPLEX:
            raise UnsupportedBackendError("the ODE solvers need the real backend")
        R = _promote_real(E, report)
        params = DerivationParams.for_algebra(R, _scalar(alpha, R), _scalar(beta, R))
        if x0 is None:
            start = [1.0] * R.n
        else:
            start = [R.field.parse(v) for v in x0.split(",")]
        n_steps = steps if steps is not None else config.verify.ode_steps
        D = build_derivation(R, params)
        numeric = solve_numeric(R, D, start, t_end, n_steps)
        closed = solve_closed(R, params, start, t_end)
        diff = max(abs(p - q) for p, q in zip(numeric.final.coords, closed.coords))

        if trajectory is None:
            click.echo(numeric.to_csv(), nl=False)
        elif trajectory.suffix == ".xlsx":
            numeric.to_excel(trajectory)
        else:
            numeric.to_csv(trajectory)
        report.results.update(
            {
                "params": params.to_dict(),
                "rows": len(numeric),
                "trajectory": str(trajectory) if trajectory else None,
                "final_numeric": [repr(v) for v in numeric.final.coords],
                "final_closed": [repr(v) for v in closed.coords],
                "max_abs_diff": diff,
            }
        )
        return True

    quiet = trajectory is None and opts.out is None
    _execute("ode", opts, inputs, body, opts.out, quiet=quiet)


if __name__ == "__main__":
    main(prog_name="evolgebra")  # pragma: no cover
