"""
Command-line application: parses arguments, builds one data product and writes it as CSV or JSON.

Exit codes: 0 on success, 1 when the computation fails (nothing is written), 2 on usage errors.
"""

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from src.application.presentation import OUTPUT_FORMATS, render
from src.application.products import (
    DEFAULT_OSCILLATOR_XI_MAX,
    SPECIAL_CHOICES,
    DataProductService,
    ProductResult,
)
from src.core.config import (
    DEFAULT_DENSITY_POINTS,
    DEFAULT_XI_MIN_ABS,
    SWEEP_D_MAX,
    SWEEP_D_MIN,
    SWEEP_LEVELS,
    SWEEP_STEPS,
    resolve_output_path,
)
from src.core.fock import DEFAULT_COHERENT_TOLERANCE, FOCK_MAX_DIMENSION
from src.core.quantum_well import DEFAULT_ROOT_TOLERANCE

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a finite positive number, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per data product."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="csv", help="Output format")
    common.add_argument("--out", help="Output file (stdout when omitted)")
    common.add_argument("--verbose", action="store_true", help="Log debug messages to stderr")

    parser = argparse.ArgumentParser(
        prog="deformed-qm",
        description="Data products of deformed quantum mechanics in fractional dimensions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    energies = commands.add_parser(
        "well-energies", parents=[common], help="Well energies versus dimension"
    )
    energies.add_argument("--d-min", type=_positive_float, default=SWEEP_D_MIN)
    energies.add_argument("--d-max", type=_positive_float, default=SWEEP_D_MAX)
    energies.add_argument("--steps", type=_positive_int, default=SWEEP_STEPS)
    energies.add_argument("--levels", type=_positive_int, default=SWEEP_LEVELS)
    energies.add_argument("--tol", type=_positive_float, default=DEFAULT_ROOT_TOLERANCE)
    energies.add_argument(
        "--workers", type=_positive_int, default=1, help="Processes for the dimension sweep"
    )

    density = commands.add_parser(
        "well-density", parents=[common], help="Probability density of a well state"
    )
    density.add_argument("--d", type=_positive_float, required=True)
    density.add_argument("--n", type=_non_negative_int, required=True)
    density.add_argument("--points", type=_positive_int, default=DEFAULT_DENSITY_POINTS)
    density.add_argument("--xi-min-abs", type=_positive_float, default=DEFAULT_XI_MIN_ABS)
    density.add_argument("--tol", type=_positive_float, default=DEFAULT_ROOT_TOLERANCE)

    special = commands.add_parser(
        "special", parents=[common], help="Table of a deformed special function"
    )
    special.add_argument("--fn", choices=SPECIAL_CHOICES, required=True)
    special.add_argument("--d", type=_positive_float, required=True)
    special.add_argument("--x-min", type=float, default=0.0)
    special.add_argument("--x-max", type=float, default=1.0)
    special.add_argument("--points", type=_positive_int, default=11)
    special.add_argument("--n-max", type=_non_negative_int, default=10)

    coherent = commands.add_parser(
        "coherent", parents=[common], help="Deformed Poisson distribution of a coherent state"
    )
    coherent.add_argument("--d", type=_positive_float, required=True)
    coherent.add_argument("--alpha-re", type=float, default=0.0)
    coherent.add_argument("--alpha-im", type=float, default=0.0)
    coherent.add_argument("--tol", type=_positive_float, default=DEFAULT_COHERENT_TOLERANCE)
    coherent.add_argument("--max-n", type=_positive_int, default=FOCK_MAX_DIMENSION)

    oscillator = commands.add_parser(
        "oscillator-density", parents=[common], help="Probability density of an oscillator state"
    )
    oscillator.add_argument("--d", type=_positive_float, required=True)
    oscillator.add_argument("--n", type=_non_negative_int, required=True)
    oscillator.add_argument("--points", type=_positive_int, default=DEFAULT_DENSITY_POINTS)
    oscillator.add_argument("--xi-max", type=_positive_float, default=DEFAULT_OSCILLATOR_XI_MAX)
    oscillator.add_argument("--xi-min-abs", type=_positive_float, default=DEFAULT_XI_MIN_ABS)
    return parser


def run_command(args: argparse.Namespace) -> ProductResult:
    """Dispatch parsed arguments to the product service."""
    service = DataProductService(workers=getattr(args, "workers", 1))
    if args.command == "well-energies":
        return service.well_energies(args.d_min, args.d_max, args.steps, args.levels, args.tol)
    if args.command == "well-density":
        return service.well_density(args.d, args.n, args.points, args.xi_min_abs, args.tol)
    if args.command == "special":
        return service.special_table(
            args.fn, args.d, args.x_min, args.x_max, args.points, args.n_max
        )
    if args.command == "coherent":
        return service.coherent_distribution(
            args.d, complex(args.alpha_re, args.alpha_im), args.tol, args.max_n
        )
    return service.oscillator_density(args.d, args.n, args.points, args.xi_max, args.xi_min_abs)


def write_atomic(path: Path, text: str) -> None:
    """Write through a temporary file in the target directory, then rename over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="\n") as stream:
            stream.write(text)
        os.replace(temp_name, path)
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Application entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    result = run_command(args)
    if not result.succeeded:
        print(f"error: {result.command}: {result.error}", file=sys.stderr)
        return EXIT_FAILURE

    try:
        text = render(result.record, args.format)
    except ValueError as exc:
        print(f"error: {result.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if args.out:
        path = resolve_output_path(args.out)
        try:
            write_atomic(path, text)
        except OSError as exc:
            print(f"error: cannot write {path}: {exc}", file=sys.stderr)
            return EXIT_FAILURE
        logger.info("Wrote %d rows to %s", len(result.record.rows), path)
    else:
        sys.stdout.write(text)
    return EXIT_OK
