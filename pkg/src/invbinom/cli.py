"""
Command-line entry point for invbinom.

Subcommands:
- ``verify --suite <name|all> [--grid-file path] [--tol t] [--report out] [--format json|csv]``
- ``eval series|gpl|mpl|closed key=value ... [--json]``
- ``list suites|identities``

`main` returns the process exit code so it can be called from tests.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .closedform import REGISTRY
from .config import get_config
from .exceptions import ConfigurationError, InvBinomException
from .harness import (
    EVAL_KINDS,
    FORMATS,
    SUITES,
    SuiteConfig,
    eval_cmd,
    load_grid,
    parse_key_values,
    run_suite,
    suite_names,
    write_report,
)
from .utils import TRACE, complex_to_dict, format_complex, get_logger

logger = get_logger("invbinom")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invbinom", description="Inverse binomial sums, polylogarithms and their identities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG, -vvv for TRACE")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", default="all", help="Suite name or 'all'")
    verify.add_argument("--grid-file", help="JSON list of parameter values replacing the default grids")
    verify.add_argument("--tol", type=float, help="Tolerance applied to every check")
    verify.add_argument("--report", help="Report path")
    verify.add_argument("--format", choices=FORMATS, default="json", dest="fmt")
    verify.add_argument("--seed", type=int, help="Seed of the random property grids")
    verify.add_argument("--workers", type=int, help="Worker threads")

    evaluate = sub.add_parser("eval", help="Evaluate one expression")
    evaluate.add_argument("kind", choices=EVAL_KINDS)
    evaluate.add_argument("args", nargs="*", metavar="key=value")
    evaluate.add_argument("--json", action="store_true", help="Print a JSON object")

    listing = sub.add_parser("list", help="List suites or identities")
    listing.add_argument("what", choices=("suites", "identities"))
    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 3:
        level = TRACE
    elif verbose == 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = get_config().log_level
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(level)


def _verify(args: argparse.Namespace) -> int:
    config = SuiteConfig(suite=args.suite, tol=args.tol, output=args.report, fmt=args.fmt, workers=args.workers)
    if args.seed is not None:
        config.seed = args.seed
    if args.grid_file:
        config.grid = load_grid(args.grid_file)
    report = run_suite(config)
    if config.output:
        write_report(report, config.output, config.fmt)
    summary = report.summary
    print(
        f"{report.suite}: {summary['passed']}/{summary['total']} passed, "
        f"{summary['errors']} errors, max abs_diff {summary['max_abs_diff']:.3e}"
    )
    for record in report.records:
        if not record.passed:
            detail = record.error or f"abs_diff {record.abs_diff:.3e} > tol {record.tol:.1e}"
            print(f"  FAIL {record.identity} at {format_complex(record.param)}: {detail}")
    return report.exit_code


def _eval(args: argparse.Namespace) -> int:
    result = eval_cmd(args.kind, parse_key_values(args.args))
    if args.json:
        payload = {
            "value": complex_to_dict(result.value),
            "abs_err": result.abs_err,
            "work": result.work,
            "method": result.method.value,
            "notes": list(result.notes),
        }
        print(json.dumps(payload))
    else:
        print(f"value   {format_complex(result.value)}")
        print(f"abs_err {result.abs_err:.3e}")
        print(f"work    {result.work}")
        print(f"method  {result.method.value}")
        if result.notes:
            print(f"notes   {', '.join(result.notes)}")
    return 0


def _list(args: argparse.Namespace) -> int:
    if args.what == "suites":
        for name in suite_names():
            print(f"{name:18s} {SUITES[name].description}")
    else:
        for identity, spec in REGISTRY.items():
            print(f"{identity.value:18s} {spec.description}  [{spec.domain_text}]")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    :param argv: Arguments without the program name (defaults to sys.argv[1:])
    :return: 0 on success, 1 when a check fails, 2 on usage or configuration errors
    """
    parser = _build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    _configure_logging(args.verbose)
    handlers = {"verify": _verify, "eval": _eval, "list": _list}
    try:
        return handlers[args.command](args)
    except ConfigurationError as e:
        logger.error("%s", e)
        return 2
    except InvBinomException as e:
        logger.error("%s: %s", e.code, e)
        return 2
    except ValueError as e:
        logger.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
