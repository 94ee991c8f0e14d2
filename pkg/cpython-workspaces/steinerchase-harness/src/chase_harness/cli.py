"""The ``steinerchase`` command line.

Subcommands:
    run     chase an instance file or a generated request sequence
    check   run the invariant suites
    growth  measure ratio growth against adaptive hypercube adversaries

Exit codes: 0 on success, 1 when a check fails, 2 on invalid input, 3 when a
solver fails. Reports and check lines go to standard output; log lines and
diagnostics go to standard error.
"""

import argparse
import sys

from steinerchase.config.config import Config
from steinerchase.counter import Counter
from steinerchase.error import SolverError, ValidationError
from steinerchase.geometry.norm import NormTag
from steinerchase.instances.generators import gen, parse_generator_spec
from steinerchase.instances.serialization import load, save
from steinerchase.logger import Logger, LogLevel

from .checks import SUITES, CheckFailed, CheckRunner
from .growth import DEFAULT_GRID, run_growth
from .plot import plot_run
from .runner import run_chase

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_SOLVER = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None, help="JSON configuration file.")
    parser.add_argument("--seed", type=int, default=None, help="Estimator seed.")
    parser.add_argument("--samples", type=int, default=None, help="Monte-Carlo sample count M.")
    parser.add_argument("--tol", type=float, default=None, help="Solver tolerance.")
    parser.add_argument("--log-level", type=str, default="info", help="NOTSET, DEBUG, INFO, WARNING, ERROR or CRITICAL.")
    parser.add_argument("--log-dir", type=str, default=None, help="Also append log lines to DIR/activity.log.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steinerchase", description="Chase convex bodies and functions.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run a chaser and report its competitive ratio.")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--instance", type=str, help="Instance JSON file.")
    source.add_argument("--gen", type=str, help="Generator spec, e.g. hypercube:d=2,N=8,adaptive=true.")
    run.add_argument("--algo", choices=["steiner", "levelset", "greedy", "nested"], default=None)
    run.add_argument("--norm", choices=[tag.value for tag in NormTag], default=None)
    run.add_argument("--substeps", type=int, default=None, help="Substeps m per function request.")
    run.add_argument("--out", type=str, default=None, help="Report path; standard output by default.")
    run.add_argument("--format", choices=["json", "csv"], default="json")
    run.add_argument("--svg", type=str, default=None, help="Trajectory plot path (d = 2 only).")
    run.add_argument("--record", type=str, default=None, help="Write the realized instance here.")
    _add_common(run)

    check = commands.add_parser("check", help="Run the invariant suites.")
    check.add_argument("--suite", choices=list(SUITES), action="append", default=None)
    check.add_argument("--perturb-conjugate", type=float, default=None, help="Add a constant error to every conjugate.")
    check.add_argument("--probes", type=int, default=20)
    _add_common(check)

    growth = commands.add_parser("growth", help="Ratios across request counts against adaptive adversaries.")
    growth.add_argument("--dim", type=int, default=3)
    growth.add_argument("--grid", type=int, nargs="*", default=list(DEFAULT_GRID))
    growth.add_argument("--algo", choices=["steiner", "levelset", "greedy", "nested"], default=None)
    growth.add_argument("--out", type=str, default=None)
    _add_common(growth)
    return parser


def _configure(args: argparse.Namespace) -> Config:
    """Loads the configuration file and applies flag overrides in memory."""
    config = Config(args.config)
    overrides = {
        "seed": args.seed,
        "samples": args.samples,
        "tol": args.tol,
        "algorithm": getattr(args, "algo", None),
        "substeps": getattr(args, "substeps", None),
        "conjugate_perturbation": getattr(args, "perturb_conjugate", None),
    }
    for key, value in overrides.items():
        if value is not None:
            config.update_config(key, value, temporary=True)
    return config


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def cmd_run(logger: Logger, args: argparse.Namespace) -> int:
    """Runs one chaser; see ``steinerchase run --help``."""
    config = _configure(args)
    if args.instance is not None:
        instance = load(args.instance)
        if args.norm is not None and NormTag.parse(args.norm) is not instance.norm:
            raise ValidationError(f"--norm {args.norm} contradicts the instance norm {instance.norm.value}", field="norm")
        source = instance
        dim, norm = instance.dim, instance.norm
        echo = {"instance": args.instance}
    else:
        norm = NormTag.parse(args.norm or "l2")
        spec = parse_generator_spec(args.gen, norm)
        source = gen(spec, logger)
        dim = spec.dim
        echo = {"gen": args.gen}

    outcome = run_chase(logger, config, dim, norm, source, echo)
    if args.format == "json":
        _emit(outcome.report.to_json(), args.out)
    elif args.out is None:
        outcome.report.write_csv(sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            outcome.report.write_csv(f)

    if args.record is not None:
        save(outcome.realized, args.record)
    if args.svg is not None:
        plot_run(outcome.report, outcome.realized, args.svg)
    return EXIT_OK


def cmd_check(logger: Logger, args: argparse.Namespace) -> int:
    """Runs the invariant suites, stopping at the first failing check."""
    config = _configure(args)
    kwargs = {"seed": 1 if args.seed is None else args.seed, "probes": args.probes}
    if args.samples is not None:
        kwargs["samples"] = args.samples
    runner = CheckRunner(logger, config, **kwargs)
    for result in runner.run(args.suite or SUITES):
        print(result.line(), flush=True)
        if not result.passed:
            logger.error("Check failed", err=CheckFailed(result), check=result.name)
            return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_growth(logger: Logger, args: argparse.Namespace) -> int:
    """Runs the growth grid and writes its report."""
    config = _configure(args)
    report = run_growth(logger, config, args.dim, args.grid)
    _emit(report.to_json(), args.out)
    return EXIT_OK


_COMMANDS = {"run": cmd_run, "check": cmd_check, "growth": cmd_growth}


def main(argv: list[str] | None = None) -> int:
    """Parses the arguments and runs a subcommand.

    Args:
        argv: Arguments without the program name; sys.argv[1:] by default.

    Returns:
        The process exit code.
    """
    args = build_parser().parse_args(argv)
    try:
        level = LogLevel.from_name(args.log_level)
    except ValueError as e:
        print(f"steinerchase: {e}", file=sys.stderr)
        return EXIT_INVALID
    logger = Logger(Counter(), log_level=level)

    try:
        if args.log_dir is not None:
            logger.set_log_dir(args.log_dir)
        return _COMMANDS[args.command](logger, args)
    except SolverError as e:
        logger.error("Solver failed", err=e)
        print(f"steinerchase: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except (ValidationError, ValueError, TypeError, KeyError, OSError) as e:
        logger.error("Invalid input", err=e)
        print(f"steinerchase: {e}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    """Console script entry point."""
    sys.exit(main())
