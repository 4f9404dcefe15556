"""Verify subcommand: runs a named verification suite."""
from typing import Any, Dict, List, Tuple

from config.constants import ErrorMessages, ExitCode
from config.settings import get_settings
from controllers.base_controller_impl import BaseControllerImpl
from models.errors import ConfigError
from schemas.report_schema import VerificationReportSchema
from schemas.run_config_schema import RunConfig
from services.verification_service import run_suite, suite_names


class VerifyController(BaseControllerImpl):
    """Controller for the verify subcommand."""

    def __init__(self, subparsers):
        super().__init__(subparsers, VerificationReportSchema, "Run a verification suite")

    @property
    def command(self) -> str:
        return "verify"

    def _register_arguments(self):
        super()._register_arguments()
        self.parser.add_argument("suite", nargs="?", help=f"One of {', '.join(suite_names())}")

    def overrides(self, args) -> Dict[str, Any]:
        return {**super().overrides(args), "suite": args.suite}

    def execute(self, config: RunConfig) -> Tuple[VerificationReportSchema, int, List[str]]:
        if config.suite is None:
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason=f"verify needs a suite: {suite_names()}"))
        suite_report = run_suite(config.suite, config.optimizer_config(get_settings()))
        report = VerificationReportSchema.from_report(suite_report, config.units)

        summary = [
            f"{'PASS' if check.passed else 'FAIL'}  {check.check} (margin {check.margin:.3g})" for check in report.checks
        ]
        summary.append(f"suite {report.suite}: {'pass' if report.overall_pass else 'fail'}")
        exit_code = ExitCode.SUCCESS if report.overall_pass else ExitCode.VERIFICATION_FAILED
        return report, exit_code, summary
