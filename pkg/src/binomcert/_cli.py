"""``binomcert`` command line: verify, sweep, series, list."""

from __future__ import annotations

import json
import logging
import sys
from typing import Sequence

import click

from ._errors import BinomcertError, exit_code_for
from ._exact import parse_rat, rat_str
from ._identities import DEFAULT_ALPHAS, ParamSet, catalog, eval_identity
from ._series import (
    DEFAULT_ORDER,
    F_METHODS,
    F_closed_form,
    G_r_closed_form,
    dump_bivariate,
    dump_univariate,
    pde_check,
    revert_u,
    routine_identity_check,
)
from ._sweep import DEFAULT_SUITE, DEFAULT_XS, SweepConfig, SweepRunner, summarize
from ._util import _parse_int_range, _parse_rat_list, _validate_enum

__all__ = ["cli", "main", "SERIES_KINDS"]

logger = logging.getLogger(__name__)

SERIES_KINDS = {"revert", "F", "Gr", "pde", "routine"}
_HANDLED = (BinomcertError, ValueError, TypeError, ZeroDivisionError)


def _fail(exc: BaseException) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(exit_code_for(exc))


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level on stderr.")
def cli(verbose: bool) -> None:
    """Exact verification of binomial double-sum identities."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.argument("identity")
@click.option("--m", "m", type=int)
@click.option("--n", "n", type=int)
@click.option("--r", "r", type=int)
@click.option("--p", "p", type=int)
@click.option("--q", "q", type=int)
@click.option("--alpha", "alpha", help="Rational, e.g. 2/3.")
@click.option("--x", "x", help="Rational, e.g. 5/2.")
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON (micros included).")
@click.option("--timing", is_flag=True, help="Also print the evaluation time in text output.")
def verify(identity: str, m: int | None, n: int | None, r: int | None, p: int | None, q: int | None,
           alpha: str | None, x: str | None, as_json: bool, timing: bool) -> None:
    """Evaluate one identity at one parameter point (exit 0 equal, 1 unequal, 2 error)."""
    try:
        params = ParamSet(
            m=m, n=n, r=r, p=p, q=q,  # type: ignore[arg-type]
            alpha=None if alpha is None else parse_rat(alpha),
            x=None if x is None else parse_rat(x),
        )
        report = eval_identity(identity, params)
    except _HANDLED as exc:
        _fail(exc)
        return
    if as_json:
        click.echo(json.dumps(report.to_json()))
    else:
        click.echo(f"{report.identity} ({report.params})")
        click.echo(f"lhs {rat_str(report.lhs_value)}")
        click.echo(f"rhs {rat_str(report.rhs_value)}")
        click.echo("equal" if report.equal else "NOT equal")
        if timing:
            click.echo(f"{report.micros} µs")
    sys.exit(exit_code_for(None, equal=report.equal))


def _ints(value: str | None, default: tuple[int, ...]) -> tuple[int, ...]:
    return default if value is None else _parse_int_range(value)


def _rats(values: Sequence[str], default: tuple) -> tuple:
    return default if not values else _parse_rat_list(values)


@cli.command()
@click.argument("identities", nargs=-1)
@click.option("--m", "m", help="Integer, lo:hi range or comma list.")
@click.option("--n", "n", help="Integer, lo:hi range or comma list.")
@click.option("--r", "r", help="Integer, lo:hi range or comma list.")
@click.option("--p", "p", help="Integer, lo:hi range or comma list.")
@click.option("--q", "q", help="Integer, lo:hi range or comma list.")
@click.option("--alpha", "alphas", multiple=True, help="Rationals; repeat or comma-separate.")
@click.option("--x", "xs", multiple=True, help="Rationals; repeat or comma-separate.")
@click.option("--certificate", "certificates", multiple=True,
              help="Series certificate to run per alpha: revert, F, Gr, pde, routine.")
@click.option("--order", type=int, default=DEFAULT_ORDER, show_default=True, help="Series order for certificates.")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Worker processes.")
@click.option("--json", "as_json", is_flag=True, help="JSON lines instead of a table.")
@click.option("--default", "use_default", is_flag=True, help="Run the full acceptance suite.")
@click.option("--timing", is_flag=True, help="Include per-record microseconds (output no longer reproducible).")
def sweep(identities: tuple[str, ...], m: str | None, n: str | None, r: str | None, p: str | None, q: str | None,
          alphas: tuple[str, ...], xs: tuple[str, ...], certificates: tuple[str, ...], order: int, jobs: int,
          as_json: bool, use_default: bool, timing: bool) -> None:
    """Run a parameter grid; exit 0 iff no record failed or errored."""
    fmt = "json" if as_json else "text"
    try:
        if use_default:
            configs: tuple[SweepConfig, ...] = DEFAULT_SUITE
            overrides: dict[str, object] = {"jobs": jobs, "fmt": fmt, "timing": timing}
        else:
            if not identities and not certificates:
                raise click.UsageError("name at least one identity or --certificate, or pass --default")
            base = SweepConfig()
            configs = (SweepConfig(
                identities=identities,
                m=_ints(m, base.m), n=_ints(n, base.n), r=_ints(r, base.r),
                p=_ints(p, base.p), q=_ints(q, base.q),
                alphas=_rats(alphas, DEFAULT_ALPHAS), xs=_rats(xs, DEFAULT_XS),
                order=order, jobs=jobs, fmt=fmt, timing=timing,
                certificates=tuple(c for chunk in certificates for c in chunk.split(",") if c),
            ),)
            overrides = {}
        logger.debug("sweeping %d config(s) with %d job(s)", len(configs), jobs)
        with SweepRunner(configs, **overrides) as runner:  # type: ignore[arg-type]
            cells, certs = runner.run(), runner.run_certificates()
            lines = runner.render(cells, certs)
    except click.UsageError:
        raise
    except _HANDLED as exc:
        _fail(exc)
        return
    for line in lines:
        click.echo(line)
    counts = summarize(cells, certs)
    sys.exit(exit_code_for(None, equal=counts["fail"] == 0 and counts["error"] == 0))


@cli.command()
@click.argument("kind")
@click.option("--alpha", default="1", show_default=True, help="Rational alpha.")
@click.option("--r", "r", type=int, default=0, show_default=True)
@click.option("--order", "--N", "order", type=int, default=DEFAULT_ORDER, show_default=True,
              help="Truncation order.")
@click.option("--method", default="direct", show_default=True, help="F construction: direct or geometric.")
def series(kind: str, alpha: str, r: int, order: int, method: str) -> None:
    """Dump revert / F / Gr coefficients, or check pde / routine."""
    try:
        (kind,) = _validate_enum("kind", kind, SERIES_KINDS, allow_multi=False)
        (method,) = _validate_enum("method", method, set(F_METHODS), allow_multi=False)
        a = parse_rat(alpha)
        if kind in ("pde", "routine"):
            passed = pde_check(a, order) if kind == "pde" else routine_identity_check(a, r)
            click.echo("pass" if passed else "fail")
            sys.exit(exit_code_for(None, equal=passed))
        if kind == "revert":
            lines = dump_univariate(revert_u(a, order))
        elif kind == "F":
            lines = dump_bivariate(F_closed_form(a, order, method))
        else:
            lines = dump_bivariate(G_r_closed_form(a, r, order))
    except _HANDLED as exc:
        _fail(exc)
        return
    for line in lines:
        click.echo(line)


@cli.command(name="list")
@click.option("--json", "as_json", is_flag=True)
def list_identities(as_json: bool) -> None:
    """Print the identity catalog with citation anchors."""
    frame = catalog()
    if as_json:
        click.echo(frame.to_json(orient="records", force_ascii=False))
    else:
        click.echo(frame.to_string(index=False))


def main() -> None:
    cli(prog_name="binomcert")


if __name__ == "__main__":
    main()
