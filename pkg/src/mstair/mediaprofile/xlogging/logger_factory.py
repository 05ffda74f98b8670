"""
Logger factory for creating CoreLogger instances.

- Creates CoreLogger instances through logging.getLogger() so they join the
    normal logger hierarchy (and pytest's caplog sees them).
- Honors environment-driven per-logger levels via LogLevelConfig.
- Does not modify the root logger; see core_logger.initialize_root().
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

from mstair.mediaprofile.xlogging.core_logger import CoreLogger


__all__ = ["create_logger"]


def create_logger(
    name: str | None,
    *,
    level: int | str | None = None,
) -> CoreLogger:
    """
    Return a CoreLogger with a consistent name.

    ``__main__`` is replaced by the script stem so that LOG_LEVEL_<NAME>
    overrides can address it.
    """
    logger_name: str = name or ""
    if logger_name == "__main__" or not logger_name:
        arg0 = Path(sys.argv[0]) if sys.argv and sys.argv[0] else None
        logger_name = arg0.stem if arg0 else "mediaprofile"

    existing = logging.Logger.manager.loggerDict.get(logger_name)
    if isinstance(existing, CoreLogger):
        if level is not None:
            existing.setLevel(level)
        return existing

    logger = _get_core_logger_from_logging(logger_name)
    if level is not None:
        logger.setLevel(level)
    return logger


def _get_core_logger_from_logging(name: str) -> CoreLogger:
    """
    Create or retrieve a CoreLogger through logging.getLogger().

    Temporarily sets CoreLogger as the logger class to ensure proper integration
    with Python's logging hierarchy (parent relationships, propagation).

    :raises TypeError: If getLogger() returns wrong type.
    """
    logging_class = logging.getLoggerClass()
    if logging_class is not CoreLogger:
        logging.setLoggerClass(CoreLogger)
    try:
        logger = logging.getLogger(name)
    finally:
        if logging_class is not CoreLogger:
            logging.setLoggerClass(logging_class)
    if not isinstance(logger, CoreLogger):
        raise TypeError(f"Failed to create CoreLogger: {logger!r}")
    return logger
