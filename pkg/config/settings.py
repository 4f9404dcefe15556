"""
Runtime settings loaded from the environment (prefix SYMCAP_) and an optional .env file.
"""
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Environment-driven defaults; CLI flags and config files override them"""

    model_config = SettingsConfigDict(
        env_prefix="SYMCAP_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    seed: Optional[int] = Field(default=None, ge=0, lt=2**64, description="Default seed fallback")
    log_level: str = Field(default="INFO")
    log_file: Optional[str] = Field(default=None, description="Enables the rotating file handler")
    threads: int = Field(default=1, ge=1, description="Worker cap for chunked sampling")
    chunk_size: int = Field(default=10000, ge=1, description="Draws per sampling chunk")
    default_samples: int = Field(default=10000, ge=100)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Cached settings instance"""
    return Settings()
