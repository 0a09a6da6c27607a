"""
Logging configuration settings.

This module contains the logging configuration section and the function
that installs handlers on the ``splitplan`` logger.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from pydantic import BaseModel, Field, field_validator

PACKAGE_LOGGER = "splitplan"
VALID_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class LoggingConfig(BaseModel):
    """Logging configuration settings."""

    level: str = Field(
        default="WARNING",
        description="Logging level"
    )

    format: str = Field(
        default="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log message format"
    )

    file: Optional[str] = Field(
        default=None,
        description="Log file path (optional)"
    )

    max_size: int = Field(
        default=10 * 1024 * 1024,  # 10MB
        description="Maximum log file size in bytes",
        ge=1024 * 1024,  # 1MB minimum
        le=100 * 1024 * 1024  # 100MB maximum
    )

    backup_count: int = Field(
        default=5,
        description="Number of backup log files to keep",
        ge=1,
        le=20
    )

    @field_validator('level')
    @classmethod
    def validate_log_level(cls, v):
        """Validate log level."""
        if v.upper() not in VALID_LEVELS:
            raise ValueError(f'Log level must be one of: {VALID_LEVELS}')
        return v.upper()


def setup_logging(config: Optional[LoggingConfig] = None, verbosity: int = 0) -> logging.Logger:
    """
    Install stderr (and optional rotating file) handlers on the package logger.

    Args:
        config: Logging section; defaults apply when omitted
        verbosity: Count of ``-v`` flags; 1 lowers the level to INFO, 2 to DEBUG

    Returns:
        logging.Logger: The configured ``splitplan`` logger
    """
    config = config or LoggingConfig()
    level = getattr(logging, config.level)
    if verbosity >= 2:
        level = min(level, logging.DEBUG)
    elif verbosity == 1:
        level = min(level, logging.INFO)

    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(config.format)
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    if config.file:
        file_handler = RotatingFileHandler(
            config.file,
            maxBytes=config.max_size,
            backupCount=config.backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.setLevel(level)
    return logger
