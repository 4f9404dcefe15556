"""
Centralized Logging Configuration

Provides consistent logging configuration across the entire package.
Results go to stdout; log records go to stderr (and optionally a rotating file).
"""
import copy
import logging
import logging.config
from pathlib import Path
from typing import Optional

from config.settings import get_settings


LOGGING_CONFIG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'default': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
        'detailed': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'level': 'DEBUG',
            'formatter': 'default',
            'stream': 'ext://sys.stderr',
        },
    },
    'root': {
        'level': 'INFO',
        'handlers': ['console'],
    },
    'loggers': {
        'py.warnings': {
            'level': 'WARNING',
            'handlers': ['console'],
            'propagate': False,
        },
    },
}


def _file_handler(filename: str) -> dict:
    return {
        'class': 'logging.handlers.RotatingFileHandler',
        'level': 'DEBUG',
        'formatter': 'detailed',
        'filename': filename,
        'maxBytes': 10485760,  # 10MB
        'backupCount': 5,
        'encoding': 'utf-8',
    }


def build_logging_config(level: Optional[str] = None, log_file: Optional[str] = None) -> dict:
    """
    Build the dictConfig payload for the given level and optional log file

    Args:
        level: Root level name; defaults to the SYMCAP_LOG_LEVEL setting
        log_file: Path of the rotating log file; defaults to SYMCAP_LOG_FILE

    Returns:
        A logging.config.dictConfig compatible dictionary
    """
    settings = get_settings()
    config = copy.deepcopy(LOGGING_CONFIG)
    config['root']['level'] = (level or settings.log_level).upper()

    log_file = log_file or settings.log_file
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        config['handlers']['file'] = _file_handler(log_file)
        config['root']['handlers'].append('file')
    return config


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None):
    """
    Setup centralized logging configuration

    Call this function once at CLI startup in main.py
    """
    logging.captureWarnings(True)
    logging.config.dictConfig(build_logging_config(level, log_file))
    logger = logging.getLogger(__name__)
    logger.debug("✅ Logging configured successfully")
