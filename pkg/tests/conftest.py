"""Pytest configuration and fixtures for testing."""
import json
import os

import numpy as np
import pytest

# Keep ambient settings out of the tests before importing app modules
os.environ.pop("SYMCAP_SEED", None)
os.environ["SYMCAP_LOG_LEVEL"] = "WARNING"

from config.settings import get_settings
from models.matrices import CovarianceMatrix, RandomStream
from schemas.optimizer_schema import OptConfig
from services import matcore_service

get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for the test body."""
    return np.random.default_rng(20240601)


@pytest.fixture
def stream() -> RandomStream:
    """Seeded random stream for service calls."""
    return RandomStream(7)


@pytest.fixture
def random_hermitian(rng):
    """Factory for GUE draws of a given dimension."""
    def factory(dim: int) -> np.ndarray:
        return matcore_service.random_hermitian(rng, dim)

    return factory


@pytest.fixture
def random_covariance(rng):
    """Factory for random full-rank unit-trace covariances."""
    def factory(dim: int) -> CovarianceMatrix:
        return matcore_service.random_covariance(rng, dim)

    return factory


@pytest.fixture
def fast_opt_config() -> OptConfig:
    """Optimizer settings small enough for unit tests."""
    return OptConfig(n_saa_samples=500, n_eval_samples=2000, seed=11)


@pytest.fixture
def output_dir(tmp_path):
    """Temporary directory for report files."""
    directory = tmp_path / "reports"
    directory.mkdir()
    return directory


@pytest.fixture
def config_file(tmp_path):
    """Write a JSON run configuration and return its path."""
    def factory(document: dict) -> str:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return factory


@pytest.fixture
def small_chunks(monkeypatch):
    """Settings with 64-draw chunks so a few hundred draws span several chunks."""
    monkeypatch.setenv("SYMCAP_CHUNK_SIZE", "64")
    get_settings.cache_clear()
    yield get_settings()
    monkeypatch.delenv("SYMCAP_CHUNK_SIZE")
    get_settings.cache_clear()
