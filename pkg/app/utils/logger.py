"""
Structured logging utilities.

Every record is one JSON object on stderr (and in LOG_FILE when set), so
command output files and log lines never mix. Context fields passed through
log_with_context land at the top level of the object.
"""

import json
import logging
from datetime import datetime, timezone
from typing import Any, Dict, List

import numpy as np

_HANDLERS: List[logging.Handler] = []
_LOGGERS: Dict[str, logging.Logger] = {}


def _to_json(value: Any) -> Any:
    """Plain Python values for numpy scalars and arrays."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class JSONFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(timespec='milliseconds').replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage()
        }

        if hasattr(record, 'extra_data'):
            log_data.update(record.extra_data)

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data, ensure_ascii=False, default=_to_json)


def _shared_handlers() -> List[logging.Handler]:
    """Console and optional file handler, created once per process."""
    if not _HANDLERS:
        from app.config import Config

        console = logging.StreamHandler()
        console.setFormatter(JSONFormatter())
        _HANDLERS.append(console)

        if Config.LOG_FILE:
            file_handler = logging.FileHandler(Config.LOG_FILE, encoding='utf-8')
            file_handler.setFormatter(JSONFormatter())
            _HANDLERS.append(file_handler)
    return _HANDLERS


def get_logger(name: str) -> logging.Logger:
    """
    Get configured logger instance.

    Handlers sit on the top-level package logger only; `app.*` loggers
    reach them by propagation, so each record is written once.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger writing JSON through the shared handlers
    """
    if name in _LOGGERS:
        return _LOGGERS[name]

    from app.config import Config

    package = logging.getLogger(name.split('.')[0])
    if not package.handlers:
        for handler in _shared_handlers():
            package.addHandler(handler)

    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, Config.LOG_LEVEL.upper()))

    _LOGGERS[name] = logger
    return logger


def set_log_level(level: str) -> None:
    """Apply a level name (DEBUG .. CRITICAL) to every logger from get_logger."""
    numeric = getattr(logging, level.upper())
    for logger in _LOGGERS.values():
        logger.setLevel(numeric)


def log_with_context(
    logger: logging.Logger,
    level: str,
    message: str,
    **context
) -> None:
    """
    Log message with structured context.

    Args:
        logger: Logger instance
        level: Log level (DEBUG, INFO, WARNING, ERROR)
        message: Log message
        **context: Additional context fields
    """
    log_method = getattr(logger, level.lower())
    log_method(message, extra={"extra_data": context})
