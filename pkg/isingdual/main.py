#!/usr/bin/env python3
"""
isingdual - Ising partition functions by primal and dual importance sampling.

Exit codes: 0 success, 1 usage error, 2 model error, 3 numeric failure,
130 interrupted.
"""
import argparse
import logging
import sys
from typing import List, Optional

from rich.markup import escape

from . import __version__
from .cli.commands import CommandHandler
from .cli.report import FORMATS
from .config import Settings
from .errors import IsingDualError, JobInterrupted, ModelError, NumericFailure, UsageError
from .log import err_console, setup_logging
from .topology.generators import TOPOLOGIES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MODEL = 2
EXIT_NUMERIC = 3
EXIT_INTERRUPTED = 130

EPILOG = """
Examples:
  isingdual exact --topology chain --n 3 --coupling const:1.0
  isingdual exact --topology grid --rows 3 --cols 3 --periodic --all-domains --chi-square
  isingdual primal --topology grid --rows 3 --cols 3 --periodic --coupling const:0.3 --samples 100000
  isingdual compare --topology grid --rows 3 --cols 3 --periodic --coupling const:2.0 --samples 100000 --seed 7
  isingdual sweep --topology grid --rows 3 --cols 3 --periodic --values 0.2,0.5,1,2 --samples 20000 --format csv
  isingdual gen --topology complete --n 6 --coupling uniform:0:1.5:3 --output k6.txt
  isingdual dual --model k6.txt --samples 50000 --tree random:11

Environment:
  ISINGDUAL_SEED, ISINGDUAL_THREADS, ISINGDUAL_LOG_LEVEL, ISINGDUAL_MAX_ENUM_BITS
"""


class ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems as UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def positive_int(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def seed_int(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be >= 0, got {value}")
    return value


def _common_options() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    model = common.add_argument_group("model")
    source = model.add_mutually_exclusive_group()
    source.add_argument('--topology', help=f"generated topology: {', '.join(TOPOLOGIES)}")
    source.add_argument('--model', metavar='FILE', help="edge-list file, one 'u v J' per line")
    model.add_argument('--n', type=positive_int, help="vertices for chain / complete")
    model.add_argument('--rows', type=positive_int, help="grid rows")
    model.add_argument('--cols', type=positive_int, help="grid columns")
    model.add_argument('--periodic', action='store_true', help="wrap the grid into a torus")
    model.add_argument('--coupling', default='const:1.0',
                       help="const:<J> or uniform:<lo>:<hi>[:<seed>] (default: const:1.0)")

    run = common.add_argument_group("run")
    run.add_argument('--tree', default='mst', help="mst (on |J|) or random:<seed> (default: mst)")
    run.add_argument('--seed', type=seed_int, help="sampling seed (default: $ISINGDUAL_SEED or 1729)")
    run.add_argument('--threads', type=positive_int, help="worker threads (default: $ISINGDUAL_THREADS or 1)")
    run.add_argument('--format', choices=FORMATS, default='json', help="report format (default: json)")
    run.add_argument('-v', '--verbose', action='store_true', help="log progress at INFO")
    run.add_argument('--debug', action='store_true', help="log at DEBUG and show tracebacks")
    return common


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog='isingdual',
        description="Estimate Ising partition functions with primal and dual importance sampling",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument('--version', action='version', version=f'isingdual {__version__}')
    common = _common_options()
    sub = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=ArgumentParser)
    sub.required = True

    exact = sub.add_parser('exact', parents=[common], help="brute-force ln Z")
    exact.add_argument('--all-domains', action='store_true', help="also report ln Z_M and ln Z_d")
    exact.add_argument('--chi-square', action='store_true', help="also report the exact chi-square of both estimators")

    for name, text in (('primal', "primal estimator (sample on the tree)"),
                       ('dual', "dual estimator (sample on the chords, J >= 0)")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('--samples', type=positive_int, required=True, help="number of samples L")

    compare = sub.add_parser('compare', parents=[common], help="both estimators on one model")
    compare.add_argument('--samples', type=positive_int, required=True, help="number of samples L")
    compare.add_argument('--dual-tree', help="tree for the dual estimator (default: share --tree)")

    sweep = sub.add_parser('sweep', parents=[common], help="both estimators over constant couplings")
    sweep.add_argument('--samples', type=positive_int, required=True, help="number of samples L per run")
    sweep.add_argument('--values', required=True, help="comma-separated couplings, e.g. 0.2,0.5,1,2")
    sweep.add_argument('--dual-tree', help="tree for the dual estimator (default: share --tree)")

    gen = sub.add_parser('gen', parents=[common], help="write an edge-list file")
    gen.add_argument('--output', '-o', metavar='FILE', help="write here instead of standard output")
    return parser


def run(argv: Optional[List[str]] = None, settings: Optional[Settings] = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    debug = False
    try:
        settings = settings or Settings.from_env()
        parser = build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            # --help / --version
            return e.code if isinstance(e.code, int) else EXIT_OK

        debug = args.debug
        level = 'DEBUG' if args.debug else 'INFO' if args.verbose else settings.log_level
        setup_logging(level)
        logger.debug("settings %s", settings)

        CommandHandler(settings).dispatch(args)
        return EXIT_OK
    except UsageError as e:
        err_console.print(f"[danger]usage error:[/danger] {escape(str(e))}",
                          highlight=False, soft_wrap=True)
        return EXIT_USAGE
    except ModelError as e:
        _report(e, "model error", debug)
        return EXIT_MODEL
    except NumericFailure as e:
        _report(e, "numeric failure", debug)
        return EXIT_NUMERIC
    except (JobInterrupted, KeyboardInterrupt):
        err_console.print("[warning]interrupted[/warning]")
        return EXIT_INTERRUPTED
    except IsingDualError as e:
        _report(e, "error", debug)
        return EXIT_MODEL


def _report(error: Exception, kind: str, debug: bool) -> None:
    err_console.print(f"[danger]{kind}:[/danger] {escape(str(error))}", highlight=False, soft_wrap=True)
    if debug:
        err_console.print_exception()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
