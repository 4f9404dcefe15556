"""Average subcommand: A_G(A) in closed form and the group's reduced set."""
from typing import List, Tuple

from config.constants import ErrorMessages, ExitCode
from controllers.base_controller_impl import BaseControllerImpl, matrix_lines
from models.errors import ConfigError
from models.groups import FiniteMultiset, group_label
from schemas.report_schema import AverageReportSchema
from schemas.run_config_schema import RunConfig
from services.symmetry_service import average, averaged_set, describe_reduced_set


class AverageController(BaseControllerImpl):
    """Controller for the average subcommand."""

    def __init__(self, subparsers):
        super().__init__(subparsers, AverageReportSchema, "Group average A_G(A) of a matrix and the reduced set of G")

    @property
    def command(self) -> str:
        return "average"

    def execute(self, config: RunConfig) -> Tuple[AverageReportSchema, int, List[str]]:
        if config.group is None or config.matrix is None:
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason="average needs a group and a matrix"))
        group = config.group.to_group()
        averaged = average(group, config.matrix)
        if isinstance(group, FiniteMultiset):
            reduced = "finite multiset average image"
        else:
            reduced = describe_reduced_set(averaged_set(group))

        report = AverageReportSchema(
            group=group_label(group),
            matrix=config.matrix,
            averaged=averaged,
            reduced_set=reduced,
            seed=config.seed,
        )
        summary = [f"group: {report.group}", "A_G(A):", *matrix_lines(averaged), f"reduced set: {reduced}"]
        return report, ExitCode.SUCCESS, summary
