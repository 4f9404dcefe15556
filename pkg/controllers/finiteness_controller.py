"""Finiteness subcommand: heuristic check that the ergodic capacity is finite."""
from typing import List, Tuple

from config.constants import ErrorMessages, ExitCode
from controllers.base_controller_impl import BaseControllerImpl
from models.enums import FinitenessVerdict
from models.errors import ConfigError
from models.matrices import RandomStream
from schemas.report_schema import FinitenessReportSchema
from schemas.run_config_schema import RunConfig
from services.infocap_service import finiteness_diagnostic


class FinitenessController(BaseControllerImpl):
    """Controller for the finiteness subcommand."""

    def __init__(self, subparsers):
        super().__init__(subparsers, FinitenessReportSchema, "Running estimates of E log(1 + ||H||) on nested samples")

    @property
    def command(self) -> str:
        return "finiteness"

    def execute(self, config: RunConfig) -> Tuple[FinitenessReportSchema, int, List[str]]:
        if config.channel is None:
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason="finiteness needs a channel"))
        diagnostic = finiteness_diagnostic(
            config.channel.to_channel(), config.finiteness_sizes(), RandomStream(config.seed)
        )

        report = FinitenessReportSchema.from_report(diagnostic, config.channel, config.units)
        unit = config.units.value
        summary = [f"n = {n}: {value:.6f} {unit}" for n, value in report.running_means]
        summary.append(f"slope per e-fold: {report.slope:.4f} {unit}")
        if report.upper_bound is not None:
            summary.append(f"upper bound: {report.upper_bound:.6f} {unit}")
        summary.append(f"verdict: {report.verdict.value}")
        if diagnostic.verdict == FinitenessVerdict.INFINITE_SUSPECTED:
            return report, ExitCode.INFINITE_SUSPECTED, summary
        return report, ExitCode.SUCCESS, summary
