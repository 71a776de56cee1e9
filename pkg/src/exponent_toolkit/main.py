"""Command-line entry point."""

import argparse
import logging
import sys
from collections.abc import Sequence

from exponent_toolkit import __version__
from exponent_toolkit.bounds import HypothesisViolationError
from exponent_toolkit.commands import add_bound_commands, add_chart_commands
from exponent_toolkit.config import settings

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if settings.debug else logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand registered.

    Returns:
        The top-level parser; each subparser sets ``func`` to its handler.
    """
    parser = argparse.ArgumentParser(
        prog="exponent-toolkit",
        description="Ext charts over the Steenrod algebra and exponent bounds "
        "for Postnikov truncations of the sphere spectrum",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    add_chart_commands(subparsers)
    add_bound_commands(subparsers)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit status.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` if omitted.

    Returns:
        0 on success, 1 on internal failure or a failed check, 2 on invalid
        arguments, 3 when a theorem's hypothesis is violated.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logger.debug("Running %s", args.command)
    try:
        status: int = args.func(args)
    except HypothesisViolationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ValueError, OSError) as e:
        logger.error("Invalid input for %s: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        logger.exception("%s failed", args.command)
        return EXIT_INTERNAL
    return status


if __name__ == "__main__":
    sys.exit(main())
