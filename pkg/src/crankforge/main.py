"""Command-line interface: ``crankforge <command>``.

Commands
--------
- ``table`` - crank table ``M[k](m, n)`` from enumeration, the product formula, or both
- ``moments`` - moment series ``M[k]_ell(n)`` as CSV
- ``verify <suite>`` - run an identity suite and print its JSON report
- ``represent`` - integer Phi-monomial representation of an even crank moment
- ``certify`` - quasimodular membership certificate
- ``eval`` - evaluate a named series at ``tau``, optionally checking a transformation law
- ``scan-inequality`` - compare ``d M[dk]_ell`` with ``M[k]_ell``

Every command exits with ``0`` exactly when all of its checks passed. Library
errors exit with ``1``; invalid option combinations are usage errors (``2``).
"""

import contextlib
import enum
import io
import logging
import sys
import typing

import pydantic
import typer

from . import __version__, combinatorics, cranks, exc, numeric, quasimod, run_settings, types, verify

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="crankforge",
    help="Exact crank tables, moment identities and quasimodular certificates for overpartitions.",
    no_args_is_help=True,
    add_completion=False,
)


class Source(str, enum.Enum):
    brute = "brute"
    series = "series"
    both = "both"


class OutputFormat(str, enum.Enum):
    csv = "csv"
    json = "json"


ORDER_HELP = "Truncation order of q-series computations."


@app.callback()
def main(
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="Repeat for more logging."),
    version: bool = typer.Option(False, "--version", help="Print the version and exit."),
) -> None:
    """Configure logging for every command."""
    if version:
        typer.echo(__version__.__version__)
        raise typer.Exit()
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


@contextlib.contextmanager
def _library_errors() -> typing.Iterator[None]:
    """Turn library and validation errors into exit code 1."""
    try:
        yield
    except (exc.CrankForgeError, pydantic.ValidationError) as err:
        typer.echo(f"error: {err}", err=True)
        raise typer.Exit(code=1) from err


def _config(
    order: typing.Optional[int] = None,
    cap: typing.Optional[int] = None,
    fmt: typing.Optional[OutputFormat] = None,
    seed: typing.Optional[int] = None,
) -> run_settings.RunConfig:
    return run_settings.RunConfig.from_environ(
        trunc_order=order,
        enumeration_cap=cap,
        output_format=fmt.value if fmt is not None else None,
        seed=seed,
    )


def _int_list(value: str, count: typing.Optional[int] = None) -> tuple[int, ...]:
    try:
        items = tuple(int(part) for part in value.split(","))
    except ValueError as err:
        raise typer.BadParameter(f"expected comma-separated integers, got {value!r}") from err
    if count is not None and len(items) != count:
        raise typer.BadParameter(f"expected {count} comma-separated integers, got {value!r}")
    return items


@app.command()
def table(
    k: int = typer.Option(1, "--k", min=1, help="Residual modulus."),
    n: int = typer.Option(10, "--n", min=0, help="Largest weight."),
    source: Source = typer.Option(Source.series, "--source", help="Where the counts come from."),
    fmt: typing.Optional[OutputFormat] = typer.Option(None, "--format", help="Output format; csv unless given."),
    cap: typing.Optional[int] = typer.Option(None, "--enumeration-cap", help="Largest weight to enumerate."),
) -> None:
    """Print the crank table; with ``--source both`` print the differences instead."""
    with _library_errors():
        config = _config(cap=cap, fmt=fmt)
        tables = {}
        if source in (Source.brute, Source.both):
            if n > config.enumeration_cap:
                raise exc.EnumerationBudgetExceededError(n, config.enumeration_cap)
            tables["brute"] = combinatorics.crank_table_bruteforce(k, n)
        if source in (Source.series, Source.both):
            tables["series"] = cranks.crank_table_from_series(k, n)
    if source is Source.both:
        diff = tables["brute"].diff(tables["series"])
        typer.echo("n,m,brute,series")
        for row in diff:
            typer.echo(",".join(str(value) for value in row))
        if diff:
            logger.warning(f"Brute-force and series tables differ in {len(diff)} entries")
            raise typer.Exit(code=1)
        return
    result = tables[source.value]
    if config.output_format == "json":
        typer.echo(result.to_payload().to_json())
    else:
        stream = io.StringIO()
        result.write_csv(stream)
        typer.echo(stream.getvalue(), nl=False)


@app.command()
def moments(
    k: int = typer.Option(1, "--k", min=1, help="Residual modulus."),
    ell: int = typer.Option(2, "--ell", min=0, help="Moment order."),
    n: int = typer.Option(20, "--n", min=0, help="Largest weight."),
    positive: bool = typer.Option(False, "--positive", help="Sum over m >= 1 only."),
) -> None:
    """Print ``k,ell,n,value`` rows of the moment series."""
    with _library_errors():
        build = cranks.positive_moment if positive else cranks.moment_series
        series = build(k, ell, n)
    typer.echo("k,ell,n,value")
    for weight in range(n + 1):
        typer.echo(f"{k},{ell},{weight},{series.coefficient(weight)}")


@app.command(name="verify")
def verify_command(
    suite: str = typer.Argument(..., help=f"One of: {', '.join(verify.suite_names())}."),
    k: typing.Optional[int] = typer.Option(None, "--k", min=1, help="Restrict to one modulus or level."),
    n: typing.Optional[int] = typer.Option(None, "--n", min=0, help="Largest weight or power of q."),
    order: typing.Optional[int] = typer.Option(
        None, "--order", min=1, envvar=run_settings.ORDER_ENVVAR, help=ORDER_HELP
    ),
    cases: str = typer.Option("6,17,28", "--cases", help="Weights for the equidistribution suite."),
    seed: int = typer.Option(0, "--seed", help="Seed of randomised suites."),
    j: typing.Optional[int] = typer.Option(None, "--j", min=1),
    m: typing.Optional[int] = typer.Option(None, "--m", min=0),
    l: typing.Optional[int] = typer.Option(None, "--l", min=1),  # noqa: E741
    cap: typing.Optional[int] = typer.Option(None, "--enumeration-cap", help="Largest weight to enumerate."),
) -> None:
    """Run an identity suite and print its JSON report."""
    if suite not in verify.suite_names():
        raise typer.BadParameter(f"unknown suite {suite!r}; choose from {verify.suite_names()}", param_hint="SUITE")
    if j is not None and l is not None and j + (m or 0) > l:
        raise typer.BadParameter(f"need j + m <= l, got j={j}, m={m or 0}, l={l}")
    options = verify.SuiteOptions(k=k, n=n, cases=_int_list(cases), j=j, m=m, l=l)
    with _library_errors():
        config = _config(order=order, cap=cap, seed=seed)
        report = verify.run_suite(suite, config, options)
    typer.echo(report.to_json())
    if not report.passed:
        raise typer.Exit(code=1)


@app.command()
def represent(
    k: int = typer.Option(1, "--k", min=1, help="Residual modulus."),
    j: int = typer.Option(1, "--j", min=1, help="Half the moment order."),
    order: typing.Optional[int] = typer.Option(
        None, "--order", min=1, envvar=run_settings.ORDER_ENVVAR, help=ORDER_HELP
    ),
) -> None:
    """Print integer coefficients of ``Cbar[k]_{2j}`` in Phi-monomials at ``q^k``."""
    with _library_errors():
        config = _config(order=order)
        representation = quasimod.find_representation(k, j, config.trunc_order)
    typer.echo(representation.to_json())


@app.command()
def certify(
    k: int = typer.Option(1, "--k", min=1, help="Residual modulus."),
    j: int = typer.Option(1, "--j", min=1),
    m: int = typer.Option(0, "--m", min=0, help="Number of delta_q applications."),
    l: int = typer.Option(1, "--l", min=1, help="Half the maximal weight."),  # noqa: E741
    order: typing.Optional[int] = typer.Option(
        None, "--order", min=1, envvar=run_settings.ORDER_ENVVAR, help=ORDER_HELP
    ),
) -> None:
    """Print a membership certificate for ``delta_q^m(Cbar[k]_{2j}) / Pbar``."""
    if j + m > l:
        raise typer.BadParameter(f"need j + m <= l, got j={j}, m={m}, l={l}")
    with _library_errors():
        config = _config(order=order)
        certificate = quasimod.certify_theorem(k, j, m, l, config.trunc_order)
    typer.echo(certificate.to_json())


@app.command(name="eval")
def eval_command(
    series: str = typer.Option(..., "--series", help="E2, E4(q^2), Phi1, P, Pbar, euler or geometric."),
    tau: str = typer.Option(..., "--tau", help="Point as 're,im'."),
    order: typing.Optional[int] = typer.Option(
        None, "--order", min=1, envvar=run_settings.ORDER_ENVVAR, help=ORDER_HELP
    ),
    gamma: typing.Optional[str] = typer.Option(
        None, "--gamma", help="Check f(gamma tau) = (c tau + d)^w f(tau); 'a,b,c,d'."
    ),
    weight: typing.Optional[int] = typer.Option(None, "--weight", help="Transformation weight for --gamma."),
    level: int = typer.Option(1, "--level", min=1, help="Level for --gamma."),
    tol: float = typer.Option(numeric.DEFAULT_TOLERANCE, "--tol", help="Relative tolerance for --gamma."),
) -> None:
    """Evaluate a named series, or check its transformation under ``--gamma``."""
    try:
        re_part, im_part = (float(part) for part in tau.split(","))
    except ValueError as err:
        raise typer.BadParameter(f"expected 're,im', got {tau!r}", param_hint="--tau") from err
    if gamma is not None and weight is None:
        raise typer.BadParameter("--gamma needs --weight")
    with _library_errors():
        config = _config(order=order)
        try:
            expansion = numeric.named_series(series, config.trunc_order)
        except ValueError as err:
            raise typer.BadParameter(str(err), param_hint="--series") from err
        point = numeric.HalfPlanePoint.from_parts(re_part, im_part)
        if gamma is None:
            value = numeric.eval_series(expansion, point)
            report = types.reports.EvaluationReport(
                series=series,
                tau=point.as_tuple(),
                trunc_order=config.trunc_order,
                value=(value.real, value.imag),
            )
            typer.echo(report.to_json())
            return
        form = quasimod.TaggedForm(series=expansion, weight=weight or 0, level=level, name=series)
        try:
            matrix = numeric.GammaElement(*_int_list(gamma, 4))
        except ValueError as err:
            raise typer.BadParameter(str(err), param_hint="--gamma") from err
        check = numeric.check_modularity(form, matrix, point, tol)
    typer.echo(check.to_json())
    if not check.passed:
        raise typer.Exit(code=1)


@app.command(name="scan-inequality")
def scan_inequality(
    d: int = typer.Option(2, "--d", min=1, help="Dilation factor."),
    k: int = typer.Option(1, "--k", min=1, help="Residual modulus."),
    ell: int = typer.Option(2, "--ell", min=0, help="Moment order."),
    n: int = typer.Option(25, "--n", min=0, help="Largest weight."),
    positive: bool = typer.Option(False, "--positive", help="Compare positive moments."),
) -> None:
    """Print the report of ``d * M[dk]_ell(n) <= M[k]_ell(n)`` for ``n <= N``."""
    with _library_errors():
        report = cranks.inequality_scan(d, k, ell, n, positive)
    typer.echo(report.to_json())
    if not report.holds:
        raise typer.Exit(code=1)


if __name__ == "__main__":
    app()
