"""
BaseRepository is an abstract class that defines the methods
"""
from abc import abstractmethod, ABC
from pathlib import Path
from typing import Type

from models.enums import OutputFormat
from schemas.base_schema import BaseSchema


class BaseRepository(ABC):
    """
    BaseRepository is an abstract class that defines the methods
    that must be implemented by the repositories.
    """
    @property
    @abstractmethod
    def schema(self) -> Type[BaseSchema]:
        """
        Pydantic schema of the stored reports
        """

    @abstractmethod
    def render(self, report: BaseSchema, fmt: OutputFormat) -> str:
        """
        Serialize a report
        :param report: BaseSchema
        :param fmt: OutputFormat
        :return: str
        """

    @abstractmethod
    def save(self, report: BaseSchema, path: Path, fmt: OutputFormat) -> Path:
        """
        Write a report
        :param report: BaseSchema
        :param path: Path
        :param fmt: OutputFormat
        :return: Path written
        """

    @abstractmethod
    def load(self, path: Path) -> BaseSchema:
        """
        Read a JSON report back
        :param path: Path
        :return: BaseSchema
        """
