"""
Run configuration: one JSON document per invocation, overridden by CLI flags.
"""
import json
import secrets
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import Field, field_validator

from config.constants import ErrorMessages, FinitenessConfig
from config.settings import Settings
from models.enums import InformationUnit, OutputFormat, RelationBackend
from models.errors import ConfigError
from schemas.base_schema import BaseSchema
from schemas.channel_schema import ChannelSchema
from schemas.group_schema import GroupSchema
from schemas.matrix_schema import MatrixLiteral
from schemas.optimizer_schema import OptConfig


class RunConfig(BaseSchema):
    """Inputs of every subcommand; each subcommand reads the fields it needs"""

    channel: Optional[ChannelSchema] = Field(default=None, description="Channel for capacity and finiteness")
    group: Optional[GroupSchema] = Field(default=None, description="Defaults to the channel's known group")
    matrix: Optional[MatrixLiteral] = Field(default=None, description="Matrix A for average")
    v1: Optional[MatrixLiteral] = Field(default=None, description="First symmetry for symcheck")
    v2: Optional[MatrixLiteral] = Field(default=None, description="Second symmetry for symcheck")
    haar_dim: Optional[int] = Field(default=None, ge=1, description="Draw V1, V2 from the seed instead")
    suite: Optional[str] = Field(default=None)
    samples: Optional[int] = Field(default=None, ge=100, description="Fresh draws for estimates")
    sizes: Optional[List[int]] = Field(default=None, min_length=FinitenessConfig.MIN_SIZES)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    threads: Optional[int] = Field(default=None, ge=1)
    optimizer: OptConfig = Field(default_factory=OptConfig)
    entry_tol: Optional[float] = Field(default=None, gt=0, description="W1* W2 non-zero threshold")
    relation_bound: int = Field(default=100, ge=1)
    relation_backend: RelationBackend = Field(default=RelationBackend.AUTO, description="Integer relation search backend")
    output: Optional[str] = Field(default=None, description="Report path")
    format: OutputFormat = Field(default=OutputFormat.JSON)
    units: InformationUnit = Field(default=InformationUnit.NATS)

    @field_validator("sizes")
    @classmethod
    def check_sizes(cls, sizes: Optional[List[int]]) -> Optional[List[int]]:
        if sizes is not None and any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"sizes must be strictly increasing, got {sizes}")
        return sizes

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        """
        Load a JSON config file

        Raises:
            ConfigError: If the file is unreadable or not valid JSON
            ValidationError: If the document does not match the schema
        """
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason=f"cannot read {path}: {e}")) from e
        if not isinstance(document, dict):
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason="top level must be a JSON object"))
        return cls.model_validate(document)

    def with_overrides(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Flag values win over the file; None means the flag was not given"""
        given = {key: value for key, value in overrides.items() if value is not None}
        if not given:
            return self
        return type(self).model_validate({**self.model_dump(), **given})

    def with_seed(self, settings: Settings) -> "RunConfig":
        """Config with an explicit seed: flag or file, then SYMCAP_SEED, then fresh entropy"""
        if self.seed is not None:
            return self
        seed = settings.seed if settings.seed is not None else secrets.randbits(63)
        return self.model_copy(update={"seed": seed})

    def optimizer_config(self, settings: Settings) -> OptConfig:
        """Optimizer settings carrying the run's seed, sample count and thread cap"""
        update: Dict[str, Any] = {"seed": self.seed}
        if self.samples is not None:
            update["n_eval_samples"] = self.samples
        threads = self.threads or self.optimizer.threads or settings.threads
        update["threads"] = threads
        return self.optimizer.model_copy(update=update)

    def finiteness_sizes(self) -> List[int]:
        """Explicit sizes, else a decade ladder ending at samples, else the defaults"""
        if self.sizes:
            return list(self.sizes)
        if self.samples is not None:
            return [max(1, self.samples // 100), max(2, self.samples // 10), self.samples]
        return list(FinitenessConfig.DEFAULT_SIZES)
