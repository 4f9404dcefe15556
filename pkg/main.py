"""
Main application module for the symcap command-line interface.
"""
import argparse
import logging
import sys
from typing import List, Optional

from config.constants import ExitCode
from config.logging_config import setup_logging

logger = logging.getLogger(__name__)

# Controllers
from controllers.average_controller import AverageController
from controllers.capacity_controller import CapacityController
from controllers.finiteness_controller import FinitenessController
from controllers.symcheck_controller import SymcheckController
from controllers.verify_controller import VerifyController


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the usage exit code"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(int(ExitCode.USAGE_ERROR), f"{self.prog}: error: {message}\n")


def create_cli_app() -> CliArgumentParser:

    parser = CliArgumentParser(
        prog="symcap",
        description="Symmetry-reduced ergodic capacity of multiantenna channels",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # Subcommands
    CapacityController(subparsers)
    AverageController(subparsers)
    VerifyController(subparsers)
    SymcheckController(subparsers)
    FinitenessController(subparsers)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, configure logging and run the chosen subcommand

    Returns:
        Exit code: 0 success, 1 usage or config error, 2 no convergence,
        3 infinite capacity suspected, 4 verification suite failed
    """
    parser = create_cli_app()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    logger.debug(f"🚀 symcap {args.command}")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
