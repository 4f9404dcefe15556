"""
Tests for the logging utilities

Error ids, contextual error logging, array summaries and the user-facing
error payload.
"""
import logging

import numpy as np
import pytest

from config.logging_config import LOGGING_CONFIG, build_logging_config
from models.errors import DimensionMismatchError
from utils.logging_utils import (
    MAX_LOGGED_ENTRIES,
    create_user_safe_error,
    describe_value,
    get_error_id,
    log_error_with_id,
    log_operation_error,
)


# ============================================================================
# FIXTURES
# ============================================================================

@pytest.fixture
def mock_logger():
    """Create mock logger for testing"""
    logger = logging.getLogger("test_logger")
    logger.setLevel(logging.DEBUG)
    logger.handlers = []
    logger.propagate = True
    return logger


# ============================================================================
# VALUE DESCRIPTIONS
# ============================================================================

@pytest.mark.unit
class TestDescribeValue:
    """Test describe_value() summaries"""

    def test_small_array_is_printed(self):
        """Test that a 2 x 2 array is printed with its entries"""
        text = describe_value(np.array([[1.0, 0.0], [0.0, 0.5]]))

        assert "0.5" in text
        assert text.startswith("[[")

    def test_large_array_is_summarized(self):
        """Test that arrays over the entry cap log dtype and shape only"""
        text = describe_value(np.zeros((1000, 4, 4), dtype=np.complex128))

        assert text == "complex128[1000x4x4]"

    def test_cap_boundary(self):
        """Test that exactly MAX_LOGGED_ENTRIES entries are still printed"""
        text = describe_value(np.ones(MAX_LOGGED_ENTRIES))

        assert "[" in text and "float64" not in text

    def test_scalars_use_str(self):
        """Test that plain values use str()"""
        assert describe_value(42) == "42"
        assert describe_value(None) == "None"


# ============================================================================
# ERROR IDS
# ============================================================================

@pytest.mark.unit
class TestErrorIdGeneration:
    """Test get_error_id()"""

    def test_get_error_id_format(self):
        """Test error ID has 8 characters"""
        error_id = get_error_id()

        assert isinstance(error_id, str)
        assert len(error_id) == 8

    def test_get_error_id_uniqueness(self):
        """Test error IDs are unique"""
        ids = {get_error_id() for _ in range(100)}

        assert len(ids) == 100


# ============================================================================
# ERROR LOGGING
# ============================================================================

@pytest.mark.unit
class TestLogErrorWithId:
    """Test log_error_with_id()"""

    def test_message_carries_id_and_exception(self, mock_logger, caplog):
        """Test the error line format"""
        with caplog.at_level(logging.ERROR, logger="test_logger"):
            error_id = log_error_with_id(mock_logger, "Sampling failed", exception=RuntimeError("boom"))

        message = caplog.records[0].message
        assert message == f"[{error_id}] Sampling failed: RuntimeError: boom"

    def test_without_exception(self, mock_logger, caplog):
        """Test that the message alone is logged"""
        with caplog.at_level(logging.ERROR, logger="test_logger"):
            error_id = log_error_with_id(mock_logger, "Nothing converged")

        assert caplog.records[0].message == f"[{error_id}] Nothing converged"

    def test_context_is_described_at_debug(self, mock_logger, caplog):
        """Test that large context arrays are summarized in the debug line"""
        with caplog.at_level(logging.DEBUG, logger="test_logger"):
            log_error_with_id(mock_logger, "Bad input", context={"samples": np.zeros((500, 2, 2))})

        debug_lines = [r.message for r in caplog.records if r.levelno == logging.DEBUG]
        assert any("float64[500x2x2]" in line for line in debug_lines)

    def test_trace_only_at_debug(self, mock_logger, caplog):
        """Test that the full trace is skipped above DEBUG"""
        mock_logger.setLevel(logging.INFO)

        with caplog.at_level(logging.INFO, logger="test_logger"):
            log_error_with_id(mock_logger, "Failed", exception=ValueError("x"))

        assert not any("Full trace" in r.message for r in caplog.records)


@pytest.mark.unit
class TestLogOperationError:
    """Test log_operation_error()"""

    def test_with_detail(self, mock_logger, caplog):
        """Test the operation, subject and detail format"""
        with caplog.at_level(logging.ERROR, logger="test_logger"):
            log_operation_error(mock_logger, "optimizing", "gaussian", ValueError("bad"), detail="seed=3")

        assert "Error optimizing gaussian (seed=3): ValueError: bad" in caplog.records[0].message

    def test_without_detail(self, mock_logger, caplog):
        """Test the format without a qualifier"""
        with caplog.at_level(logging.ERROR, logger="test_logger"):
            error_id = log_operation_error(mock_logger, "writing", "report.json", OSError("denied"))

        assert caplog.records[0].message.startswith(f"[{error_id}] Error writing report.json:")


# ============================================================================
# USER-FACING ERRORS
# ============================================================================

@pytest.mark.unit
class TestCreateUserSafeError:
    """Test create_user_safe_error()"""

    def test_domain_error_message_passes_through(self):
        """Test that domain errors keep their message"""
        error = create_user_safe_error("abcd1234", "capacity", DimensionMismatchError("Q is 3 x 3, expected 2 x 2"))

        assert error == {
            "error": "An error occurred during capacity",
            "error_id": "abcd1234",
            "message": "Q is 3 x 3, expected 2 x 2",
        }

    def test_unexpected_error_is_generic(self):
        """Test that internal failures are not echoed"""
        error = create_user_safe_error("abcd1234", "average", KeyError("internal"))

        assert "internal" not in error["message"]
        assert "--log-level DEBUG" in error["message"]

    def test_default_operation(self):
        """Test the default operation name"""
        assert create_user_safe_error("id").get("error") == "An error occurred during operation"


# ============================================================================
# LOGGING CONFIGURATION
# ============================================================================

@pytest.mark.unit
class TestBuildLoggingConfig:
    """Test build_logging_config()"""

    def test_level_is_upper_cased(self):
        """Test that the root level comes from the argument"""
        config = build_logging_config("debug")

        assert config["root"]["level"] == "DEBUG"
        assert config["root"]["handlers"] == ["console"]

    def test_file_handler_added(self, tmp_path):
        """Test that a log file adds the rotating handler"""
        log_file = tmp_path / "logs" / "symcap.log"

        config = build_logging_config("INFO", str(log_file))

        assert config["handlers"]["file"]["filename"] == str(log_file)
        assert "file" in config["root"]["handlers"]
        assert log_file.parent.is_dir()

    def test_base_config_not_mutated(self, tmp_path):
        """Test that building a config leaves LOGGING_CONFIG untouched"""
        build_logging_config("INFO", str(tmp_path / "x.log"))

        assert LOGGING_CONFIG["root"]["handlers"] == ["console"]
        assert "file" not in LOGGING_CONFIG["handlers"]
