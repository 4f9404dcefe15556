"""
Logging Utilities

Error ids, contextual error logging and the error payload printed by the CLI.
Large arrays in log context are summarized instead of dumped.
"""
import logging
import traceback
import uuid
from typing import Any, Optional

import numpy as np

from models.errors import SymcapError

logger = logging.getLogger(__name__)

# Arrays with more entries than this are logged by shape only
MAX_LOGGED_ENTRIES = 16


def describe_value(value: Any) -> str:
    """
    Short log representation of a context value

    Args:
        value: Any context value

    Returns:
        The value's str, or dtype and shape for large arrays
    """
    if isinstance(value, np.ndarray) and value.size > MAX_LOGGED_ENTRIES:
        return f"{value.dtype}[{'x'.join(str(s) for s in value.shape)}]"
    if isinstance(value, np.ndarray):
        return np.array2string(value, precision=4, separator=", ")
    return str(value)


def get_error_id() -> str:
    """
    Generate unique error ID for tracking

    Returns:
        8-character error ID
    """
    return str(uuid.uuid4())[:8]


def log_error_with_id(
    logger_instance: logging.Logger,
    message: str,
    exception: Optional[Exception] = None,
    context: Optional[dict] = None,
    include_trace: bool = False,
) -> str:
    """
    Log error with a unique error ID

    Args:
        logger_instance: Logger to use
        message: Error message
        exception: Optional exception object
        context: Optional context dictionary
        include_trace: Whether to include full stack trace (DEBUG only)

    Returns:
        Error ID for tracking
    """
    error_id = get_error_id()

    if exception:
        logger_instance.error(f"[{error_id}] {message}: {type(exception).__name__}: {exception}")
    else:
        logger_instance.error(f"[{error_id}] {message}")

    if context:
        described = {k: describe_value(v) for k, v in context.items()}
        logger_instance.debug(f"[{error_id}] Context: {described}")

    # Full trace only in DEBUG mode
    if exception and (include_trace or logger_instance.isEnabledFor(logging.DEBUG)):
        logger_instance.debug(f"[{error_id}] Full trace:\n{traceback.format_exc()}")

    return error_id


def log_operation_error(
    logger_instance: logging.Logger,
    operation: str,
    subject: str,
    exception: Exception,
    detail: Optional[str] = None,
) -> str:
    """
    Log a failed operation with standardized format

    Args:
        logger_instance: Logger to use
        operation: Operation being performed (optimizing, averaging, writing...)
        subject: What it was performed on (a channel kind, a group, a path)
        exception: Exception that occurred
        detail: Optional qualifier such as the seed

    Returns:
        Error ID for tracking
    """
    if detail:
        message = f"Error {operation} {subject} ({detail})"
    else:
        message = f"Error {operation} {subject}"

    context = {
        "operation": operation,
        "subject": subject,
        "detail": detail,
    }

    return log_error_with_id(logger_instance, message, exception=exception, context=context)


def create_user_safe_error(error_id: str, operation: str = "operation", exception: Optional[Exception] = None) -> dict:
    """
    Create the error payload shown to the user

    Domain and validation errors carry messages written for users and are
    passed through; anything else is reported generically.

    Args:
        error_id: Error ID for tracking
        operation: Operation that failed
        exception: The exception, if any

    Returns:
        Error dictionary
    """
    if isinstance(exception, (SymcapError, ValueError)):
        message = str(exception)
    else:
        message = "Unexpected failure; rerun with --log-level DEBUG for the full trace"
    return {
        "error": f"An error occurred during {operation}",
        "error_id": error_id,
        "message": message,
    }
