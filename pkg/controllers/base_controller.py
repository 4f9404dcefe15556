"""
Module for the abstract base controller class.

Each controller owns one CLI subcommand: it registers its arguments on the
subcommand parser and turns a validated RunConfig into a report and an exit code.
"""
from abc import ABC, abstractmethod
from typing import List, Tuple

from schemas.report_schema import ReportSchema
from schemas.run_config_schema import RunConfig


class BaseController(ABC):
    """
    Abstract base controller class for CLI subcommands.
    """

    @property
    @abstractmethod
    def command(self) -> str:
        """
        Subcommand name
        """

    @abstractmethod
    def execute(self, config: RunConfig) -> Tuple[ReportSchema, int, List[str]]:
        """
        Run the subcommand
        :param config: RunConfig with an explicit seed
        :return: (report, exit code, summary lines for stdout)
        """
