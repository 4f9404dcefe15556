"""Capacity subcommand: known group, reduced set, projected gradient ascent, fresh re-estimate."""
import logging
from typing import List, Tuple

from config.constants import ErrorMessages, ExitCode
from config.settings import get_settings
from controllers.base_controller_impl import BaseControllerImpl, matrix_lines
from models.errors import ConfigError
from schemas.report_schema import CapacityReportSchema
from schemas.run_config_schema import RunConfig
from services.optimizer_service import optimize_capacity
from services.symmetry_service import describe_reduced_set

logger = logging.getLogger(__name__)


class CapacityController(BaseControllerImpl):
    """Controller for the capacity subcommand."""

    def __init__(self, subparsers):
        super().__init__(subparsers, CapacityReportSchema, "Ergodic capacity over the channel's reduced covariance set")

    @property
    def command(self) -> str:
        return "capacity"

    def execute(self, config: RunConfig) -> Tuple[CapacityReportSchema, int, List[str]]:
        if config.channel is None:
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason="capacity needs a channel"))
        model = config.channel.to_channel()
        group = config.group.to_group() if config.group is not None else None
        result = optimize_capacity(model, group, config.optimizer_config(get_settings()))

        report = CapacityReportSchema.from_result(
            result, describe_reduced_set(result.reduced_set), config.channel, config.units
        )
        unit = config.units.value
        summary = [
            f"capacity: {report.capacity.value:.6f} ± {report.capacity.std_error:.2e} {unit}",
            f"reduced set: {report.reduced_set}",
            f"iterations: {result.iterations} ({'converged' if result.converged else 'not converged'})",
            "q_star:",
            *matrix_lines(result.q_star.matrix),
        ]
        exit_code = ExitCode.SUCCESS if result.converged else ExitCode.NOT_CONVERGED
        return report, exit_code, summary
