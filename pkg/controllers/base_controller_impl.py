"""Base controller implementation: shared flags, config resolution, report emission and exit codes."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Type

import numpy as np
from pydantic import ValidationError

from config.constants import ExitCode
from config.settings import get_settings
from controllers.base_controller import BaseController
from models.enums import InformationUnit, OutputFormat
from models.errors import SymcapError
from repositories.report_repository import ReportRepository
from schemas.report_schema import ReportSchema
from schemas.run_config_schema import RunConfig
from utils.logging_utils import create_user_safe_error, log_operation_error

logger = logging.getLogger(__name__)


class BaseControllerImpl(BaseController):
    """
    Base controller implementation.

    Registers the common flags on its subcommand parser and wraps execute()
    with config loading, seed injection, report writing and error mapping.
    """

    def __init__(self, subparsers, schema: Type[ReportSchema], help_text: str):
        """
        Initialize the controller and register its subcommand.

        Args:
            subparsers: The action returned by ArgumentParser.add_subparsers()
            schema: Report schema written by this subcommand
            help_text: One-line description for --help
        """
        self.schema = schema
        self.repository = ReportRepository(schema)
        self.parser = subparsers.add_parser(self.command, help=help_text, description=help_text)
        self._register_arguments()
        self.parser.set_defaults(handler=self.dispatch)

    def _register_arguments(self):
        """Register the flags shared by every subcommand."""
        self.parser.add_argument("--config", metavar="PATH", help="JSON run configuration")
        self.parser.add_argument("--seed", type=int, metavar="U64", help="Seed (default: SYMCAP_SEED, else fresh)")
        self.parser.add_argument("--samples", type=int, metavar="N", help="Fresh draws for estimates")
        self.parser.add_argument("--output", metavar="PATH", help="Report path")
        self.parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="Report format")
        self.parser.add_argument("--bits", action="store_true", help="Report information in bits instead of nats")
        self.parser.add_argument("--threads", type=int, metavar="K", help="Worker cap")
        self.parser.add_argument(
            "--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Log level on stderr"
        )

    def overrides(self, args: argparse.Namespace) -> Dict[str, Any]:
        """Config fields set by flags; subclasses add their own"""
        return {
            "seed": args.seed,
            "samples": args.samples,
            "output": args.output,
            "format": args.format,
            "threads": args.threads,
            "units": InformationUnit.BITS.value if args.bits else None,
        }

    def load_config(self, args: argparse.Namespace) -> RunConfig:
        config = RunConfig.from_file(args.config) if args.config else RunConfig()
        return config.with_overrides(self.overrides(args)).with_seed(get_settings())

    def default_output(self, config: RunConfig) -> Path:
        return Path(f"symcap-{self.command}.{config.format.value}")

    def dispatch(self, args: argparse.Namespace) -> int:
        """Run the subcommand and map failures to exit codes"""
        try:
            config = self.load_config(args)
            logger.debug(f"Running {self.command} with seed {config.seed}")
            report, exit_code, summary = self.execute(config)
            path = Path(config.output) if config.output else self.default_output(config)
            self.repository.save(report, path, config.format)
        except (SymcapError, ValidationError, ValueError, OSError) as e:
            error_id = log_operation_error(logger, "running", self.command, e)
            print(json.dumps(create_user_safe_error(error_id, self.command, e)), file=sys.stderr)
            return int(ExitCode.USAGE_ERROR)
        except Exception as e:
            error_id = log_operation_error(logger, "running", self.command, e, detail="unexpected")
            print(json.dumps(create_user_safe_error(error_id, self.command, e)), file=sys.stderr)
            return int(ExitCode.USAGE_ERROR)

        for line in summary:
            print(line)
        print(f"seed: {config.seed}")
        print(f"report: {path}")
        return int(exit_code)


def matrix_lines(matrix, indent: str = "  ") -> List[str]:
    """Human-readable rows of a matrix for the stdout summary"""
    text = np.array2string(np.asarray(matrix), precision=6, suppress_small=True, max_line_width=120)
    return [indent + line for line in text.splitlines()]
