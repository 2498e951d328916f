"""
main.py - Command-line entry point for building, simulating and analysing quantum Galton boards
"""
import argparse
import logging
import sys

from cli import __version__
from cli.commands import cmd_analyze, cmd_build, cmd_count, cmd_replay, cmd_simulate
from cli.config import CONFIG_PATH, load_config
from galton_board import BoundVariant
from qasm_io import QasmSyntaxError
from simulators import BranchBudgetExceeded

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a probability in [0, 1], got {value}")
    return value


def add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", help="OpenQASM 2.0 file to load instead of generating a circuit")
    parser.add_argument("--levels", type=positive_int, help="Generate an n-level board")
    parser.add_argument("--peg", action="store_true", help="Generate a single peg")
    parser.add_argument("--bias-theta", help="Coin angle expression for every peg, e.g. 2pi/3")
    parser.add_argument("--peg-angles", help="File with one coin angle per peg, row-major from the top")
    parser.add_argument("--fine", action="store_true", help="Per-peg coins with the --bias-theta angle")


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = ArgumentParser(prog="qgalton", description="Quantum Galton board toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=str(CONFIG_PATH), help="Path to the run configuration JSON")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")
    subparsers.required = True

    build_parser = subparsers.add_parser("build", help="Write a circuit as OpenQASM")
    add_source_arguments(build_parser)
    build_parser.add_argument("--out", required=True, help="Output .qasm file")
    build_parser.set_defaults(handler=cmd_build)

    simulate_parser = subparsers.add_parser("simulate", help="Sample shots or compute exact probabilities")
    add_source_arguments(simulate_parser)
    simulate_parser.add_argument("--shots", type=positive_int, help="Number of shots (default from config)")
    simulate_parser.add_argument("--seed", type=int, help="Run seed (default from config)")
    simulate_parser.add_argument("--exact", action="store_true", help="Exact outcome probabilities")
    simulate_parser.add_argument("--memory", action="store_true", help="Also store per-shot outcomes in order")
    simulate_parser.add_argument("--workers", type=positive_int, help="Worker processes")
    simulate_parser.add_argument("--out", required=True, help="Output results .json")
    simulate_parser.set_defaults(handler=cmd_simulate)

    analyze_parser = subparsers.add_parser("analyze", help="Decode results and compare with a reference law")
    analyze_parser.add_argument("results", help="Results .json from simulate")
    analyze_parser.add_argument("--block", type=positive_int, help="Block size for rescaling (default from config)")
    analyze_parser.add_argument("--reference", choices=["binomial", "normal"], default="binomial")
    analyze_parser.add_argument("--p", type=probability, default=0.5, help="Reference success probability")
    analyze_parser.add_argument("--levels", type=positive_int, help="Board depth (default: from bitstring width)")
    analyze_parser.add_argument("--out", help="Output .csv (block sums go to <stem>_blocks.csv)")
    analyze_parser.set_defaults(handler=cmd_analyze)

    count_parser = subparsers.add_parser("count", help="Gate counts, depth and closed-form bounds")
    add_source_arguments(count_parser)
    count_parser.add_argument("--variant", choices=[v.value for v in BoundVariant], help="Bound to compare with")
    count_parser.set_defaults(handler=cmd_count)

    replay_parser = subparsers.add_parser("replay", help="Re-run a results file or manifest and compare outputs")
    replay_parser.add_argument("manifest", help="Results .json or .manifest.json sidecar")
    replay_parser.add_argument("--input-dir", help="Directory holding the recorded inputs (default: next to the manifest)")
    replay_parser.set_defaults(handler=cmd_replay)

    return parser.parse_args(argv)


def main(argv=None) -> int:
    """Main entry point."""
    args = parse_args(argv)
    config = load_config(args.config)

    level = config.get("log_level", "INFO")
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(level=level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    try:
        return args.handler(args, config)
    except QasmSyntaxError as e:
        logger.error(f"Parse error: {e}")
        return EXIT_PARSE
    except BranchBudgetExceeded as e:
        logger.error(f"Exact simulation aborted: {e}")
        return EXIT_BUDGET
    except (ValueError, KeyError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
