"""
Command line front end for the contest solver

    python -m src.cli solve --config configs/golden/gap_effortless.json
    python -m src.cli matrix --config configs/golden/three_efforts_pure.json
    python -m src.cli sweep --config configs/golden/unconstrained.json --e-high-min 0.25 --e-high-max 0.5 --steps 6
    python -m src.cli identity-check --valuation 1 --r 1 --samples 10000 --seed 7
    python -m src.cli oracle --config configs/golden/gap_effortless.json

Exit status: 0 on success or a confirmed verdict, 1 on an oracle refutation or a
failed identity check, 2 on usage, configuration or domain errors.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from src.core.errors import ContestError
from src.core.logging import get_logger, setup_logging
from src.models.contest import RunConfig
from src.services.contest_service import get_contest_service
from src.utils import rendering
from src.utils.config_file import load_spec
from src.utils.numbers import parse_number

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=None, help="Output format")
    common.add_argument("--output", type=Path, default=None, help="Write the report to PATH instead of stdout")

    config = argparse.ArgumentParser(add_help=False)
    config.add_argument("--config", type=Path, required=True, help="Contest configuration (JSON)")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--grid-step", type=_number, default=None, help="Grid resolution h")
    grid.add_argument("--eps", type=_number, default=None, help="Epsilon slack for grid equilibria")

    parser = argparse.ArgumentParser(
        prog="contest-solver",
        description="Equilibria of two-player logit contests over constrained choice sets",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("solve", parents=[common, config], help="Pure equilibria of a symmetric contest")
    commands.add_parser("matrix", parents=[common, config, grid], help="Payoff bimatrix and Nash analysis")

    sweep = commands.add_parser("sweep", parents=[common, config], help="Threshold effort over upper bracket efforts")
    sweep.add_argument("--e-high-min", type=_number, required=True)
    sweep.add_argument("--e-high-max", type=_number, required=True)
    sweep.add_argument("--steps", type=_positive_int, default=11)
    sweep.add_argument("--e-low", type=_number, default=None, help="Lower bracket effort (default: from the config)")

    identity = commands.add_parser("identity-check", parents=[common], help="Payoff identity over random pairs")
    identity.add_argument("--valuation", type=_number, default=1.0)
    identity.add_argument("--r", type=_number, default=1.0)
    identity.add_argument("--a", type=_number, default=1.0)
    identity.add_argument("--samples", type=_positive_int, default=10_000)
    identity.add_argument("--force-equal", action="store_true", help="Draw x == y")
    identity.add_argument("--seed", type=int, default=0, help="Seed for the random effort pairs")

    oracle = commands.add_parser("oracle", parents=[common, config, grid], help="Brute-force verification")
    oracle.add_argument("--self-test-corrupt", action="store_true", help="Verify a deliberately corrupted report")
    return parser


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        output.write_text(text + "\n", encoding="utf-8")


def _run(args: argparse.Namespace) -> int:
    service = get_contest_service()

    if args.command == "identity-check":
        report = service.identity_check(
            args.valuation, args.r, args.samples, args.seed, a=args.a, force_equal=args.force_equal
        )
        fmt = args.format or RunConfig.resolve().output_format
        _emit(rendering.render_json(report) if fmt == "json" else rendering.render_identity(report), args.output)
        return EXIT_OK if report.passed else EXIT_REFUTED

    spec = load_spec(args.config)
    grid_step = getattr(args, "grid_step", None)
    eps = getattr(args, "eps", None)
    run = RunConfig.resolve(spec, grid_step=grid_step, eps=eps, output_format=args.format)
    as_json = run.output_format == "json"

    if args.command == "solve":
        report = service.solve(spec, run)
        _emit(rendering.render_json(report) if as_json else rendering.render_equilibrium(report), args.output)
        return EXIT_OK

    if args.command == "matrix":
        report = service.matrix(spec, run, grid_step=grid_step)
        _emit(rendering.render_json(report) if as_json else rendering.render_matrix(report), args.output)
        return EXIT_OK

    if args.command == "sweep":
        rows = service.sweep(spec, args.e_high_min, args.e_high_max, args.steps, e_low=args.e_low, run=run)
        _emit(rendering.render_json(rows) if as_json else rendering.render_sweep_csv(rows), args.output)
        return EXIT_OK

    verdict = service.oracle(spec, run, corrupt=args.self_test_corrupt, grid_step=grid_step, eps=eps)
    _emit(rendering.render_json(verdict) if as_json else rendering.render_verdict(verdict), args.output)
    return EXIT_OK if verdict.confirmed else EXIT_REFUTED


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging(stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except ContestError as exc:
        logger.error("command failed", command=args.command, error=str(exc))
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        error = exc.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        logger.error("invalid parameters", command=args.command, field=field, error=error["msg"])
        sys.stderr.write(f"error: {field}: {error['msg']}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
