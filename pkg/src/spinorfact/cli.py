"""Command-line front end: factor, verify, cofactor, annihilate and fourbar.

Every subcommand reads JSON (a file path or stdin) and writes JSON to
stdout.  Diagnostics go to stderr.

Exit status:
    0  success
    1  bad input (malformed JSON, wrong shapes, missing files) or a solver breakdown
    2  a domain signal (no factorization, orthogonal annihilators, ...)

Usage:
    spinorfact factor poly.json --all
    spinorfact annihilate < element.json
    spinorfact fourbar --format pretty
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from spinorfact.annihilator import left_annihilator, right_annihilator
from spinorfact.errors import DomainSignal, NumericalFailure
from spinorfact.factorization import (
    FactorOptions,
    FactorReport,
    factorize_all,
    format_four_quat,
    verify,
)
from spinorfact.fourbar_demo import FourBarReport, run_fourbar
from spinorfact.mult_technique import (
    CofactorResult,
    RealCofactorResult,
    find_cofactor,
    real_cofactor,
)
from spinorfact.schemas import (
    AnnihilatorReportModel,
    CofactorResultModel,
    EvenElementModel,
    ErrorModel,
    FactorizationModel,
    FactorReportModel,
    FourBarReportModel,
    PointsModel,
    PolynomialModel,
    QuadricSystemModel,
    RunConfig,
    VerifyRequestModel,
    VerifyResultModel,
    WireModel,
    load_model,
)

VERIFY_TOL: float = 1e-9
EXIT_OK: int = 0
EXIT_INPUT: int = 1
EXIT_DOMAIN: int = 2
EXIT_INTERRUPTED: int = 130

logger: logging.Logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def _stdin_text(config: RunConfig) -> Optional[str]:
    return sys.stdin.read() if config.input is None else None


def _factor(config: RunConfig) -> Tuple[int, WireModel]:
    poly = load_model(PolynomialModel, config.input, _stdin_text(config)).to_polynomial()
    options = FactorOptions(
        all_orderings=config.all_orderings, seed=config.seed, tol=config.tol, side=config.side
    )
    report: FactorReport = factorize_all(poly, options)
    code: int = EXIT_DOMAIN if report.status == "no_factorization" else EXIT_OK
    return code, FactorReportModel.from_report(report)


def _verify(config: RunConfig) -> Tuple[int, WireModel]:
    request: VerifyRequestModel = load_model(VerifyRequestModel, config.input, _stdin_text(config))
    residual: float = verify(
        request.polynomial.to_polynomial(), request.factorization.to_factorization()
    )
    verified: bool = residual <= VERIFY_TOL
    return (EXIT_OK if verified else EXIT_DOMAIN), VerifyResultModel(
        residual=float(f"{residual:.12g}"), verified=verified
    )


def _cofactor(config: RunConfig) -> Tuple[int, WireModel]:
    poly = load_model(PolynomialModel, config.input, _stdin_text(config)).to_polynomial()
    found: CofactorResult = find_cofactor(poly, config.seed, config.max_attempts)
    real: RealCofactorResult = real_cofactor(poly, config.seed, config.max_attempts)
    return EXIT_OK, CofactorResultModel.from_results(found, real)


def _annihilate(config: RunConfig) -> Tuple[int, WireModel]:
    element: EvenElementModel = load_model(EvenElementModel, config.input, _stdin_text(config))
    n = element.to_multivector()
    rng: np.random.Generator = np.random.default_rng(config.seed)
    left = left_annihilator(n, config.method, rng=rng)
    right = right_annihilator(n, config.method, rng=rng)
    return EXIT_OK, AnnihilatorReportModel.from_spaces(left, right)


def _fourbar(config: RunConfig) -> Tuple[int, WireModel]:
    system = load_model(QuadricSystemModel, config.system).to_system() if config.system else None
    points = load_model(PointsModel, config.points).to_quaternions() if config.points else None
    report: FourBarReport = run_fourbar(system, points, seed=config.seed, tol=config.tol)
    return EXIT_OK, FourBarReportModel.from_report(report)


_HANDLERS = {
    "factor": _factor,
    "verify": _verify,
    "cofactor": _cofactor,
    "annihilate": _annihilate,
    "fourbar": _fourbar,
}


def dispatch(config: RunConfig) -> Tuple[int, WireModel]:
    """Run one subcommand and return ``(exit status, payload)``.

    Domain signals and input errors are turned into an ``ErrorModel``
    payload with the matching exit status.
    """
    try:
        return _HANDLERS[config.subcommand](config)
    except DomainSignal as exc:
        logger.warning("%s: %s", type(exc).__name__, exc)
        return EXIT_DOMAIN, ErrorModel(error=type(exc).__name__, detail=str(exc))
    except (ValidationError, ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        logger.error("Invalid input -- %s: %s", type(exc).__name__, exc)
        return EXIT_INPUT, ErrorModel(error=type(exc).__name__, detail=str(exc))
    except NumericalFailure as exc:
        logger.error("Numerical failure -- %s: %s", type(exc).__name__, exc)
        return EXIT_INPUT, ErrorModel(error=type(exc).__name__, detail=str(exc))


# ---------------------------------------------------------------------------
# Pretty output
# ---------------------------------------------------------------------------


def _even(model: EvenElementModel) -> str:
    return format_four_quat(model.to_multivector())


def _factorization_table(title: str, fact: FactorizationModel) -> Table:
    table: Table = Table(title=title)
    table.add_column("#", justify="right")
    table.add_column("factor")
    table.add_column("method")
    for index, factor in enumerate(fact.factors, start=1):
        table.add_row(str(index), f"t - ({_even(factor.h)})", factor.method)
    table.caption = f"lead = {_even(fact.lead)}   residual = {fact.residual:.2e}"
    return table


def render_pretty(payload: WireModel, console: Console) -> None:
    """Rich tables for a payload; four-quaternion notation for even elements."""
    if isinstance(payload, FactorReportModel):
        console.print(f"status: [bold]{payload.status}[/bold]")
        for fact in payload.factorizations:
            console.print(_factorization_table(f"ordering {fact.ordering_id}", fact))
        for diag in payload.diagnostics:
            console.print(f"  {diag.ordering_id}: {diag.status} {diag.detail}")
    elif isinstance(payload, CofactorResultModel):
        table: Table = Table(title=f"cofactor after {payload.attempts} attempt(s)")
        table.add_column("k", justify="right")
        table.add_column("coefficient of H")
        for k, coeff in enumerate(payload.H.coeffs):
            table.add_row(str(k), _even(coeff))
        console.print(table)
        console.print(f"R = {payload.R.real_coeffs}")
        if payload.product_factorization is not None:
            console.print(_factorization_table("P H", payload.product_factorization))
        console.print(_factorization_table("P R", payload.real_factorization))
    elif isinstance(payload, FourBarReportModel):
        table = Table(title="revolute axes")
        table.add_column("axis")
        table.add_column("direction")
        for label, axis in zip(("f1", "f2"), payload.fixed_axes):
            table.add_row(label, str(axis))
        for label, axis in zip(("m1", "m2"), payload.moving_axes):
            table.add_row(label, str(axis))
        console.print(table)
        console.print(f"first kind:  {payload.first_kind}")
        console.print(f"second kind: {payload.second_kind}")
    else:
        console.print_json(payload.to_json())


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _configure_logging(verbose: bool) -> None:
    """Set up root logging format and level."""
    level: int = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="spinorfact",
        description="Factor spinor polynomials of conformal geometric algebra.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(name: str, help_text: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(
            name, help=help_text, formatter_class=argparse.ArgumentDefaultsHelpFormatter
        )
        if with_input:
            p.add_argument(
                "input", type=Path, nargs="?", default=None, help="JSON input (stdin if omitted)"
            )
        p.add_argument("--tol", type=float, default=1e-10, help="Numerical tolerance")
        p.add_argument("--seed", type=int, default=0, help="Random seed")
        p.add_argument("--format", choices=("json", "pretty"), default="json", help="Output format")
        p.add_argument(
            "-v",
            "--verbose",
            action="store_true",
            default=argparse.SUPPRESS,
            help="Enable debug logging",
        )
        return p

    factor = common("factor", "Factor a spinor polynomial into linear factors")
    factor.add_argument(
        "--all", dest="all_orderings", action="store_true", help="Explore every ordering"
    )
    factor.add_argument("--side", choices=("left", "right"), default="left", help="Factor side")

    common("verify", "Re-expand a factorization and compare it with its polynomial")

    cofactor = common("cofactor", "Find linear and real cofactors of a spinor polynomial")
    cofactor.add_argument("--max-attempts", type=int, default=20, help="Cofactor samples to try")

    annihilate = common("annihilate", "Left and right annihilating points of a null displacement")
    annihilate.add_argument(
        "--method", choices=("nullspace", "sandwich", "cases"), default="nullspace", help="Method"
    )

    fourbar = common(
        "fourbar", "Recover the revolute axes of a spherical four-bar", with_input=False
    )
    fourbar.add_argument(
        "--system", type=Path, default=None, help="Three 4x4 symmetric forms (JSON)"
    )
    fourbar.add_argument(
        "--points", type=Path, default=None, help="Null points (JSON); skips the solver"
    )
    return parser


def _emit(code: int, payload: WireModel, fmt: str) -> int:
    if fmt == "pretty" and not isinstance(payload, ErrorModel):
        render_pretty(payload, Console())
    else:
        sys.stdout.write(payload.to_json() + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI entry-point; returns the process exit status."""
    parser: argparse.ArgumentParser = build_parser()
    args: argparse.Namespace = parser.parse_args(list(argv) if argv is not None else None)
    _configure_logging(args.verbose)

    try:
        # 1. Validate flags
        try:
            config: RunConfig = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
        except ValidationError as exc:
            logger.error("Invalid arguments: %s", exc)
            return _emit(EXIT_INPUT, ErrorModel(error="ValidationError", detail=str(exc)), "json")

        # 2. Run
        code, payload = dispatch(config)

        # 3. Emit
        return _emit(code, payload, config.format)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return EXIT_INTERRUPTED
    except Exception:
        logger.exception("Unexpected error")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
