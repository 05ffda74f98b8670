"""
Structured logging with environment-driven configuration.

Design summary:
- Root logger owns handlers; CoreLogger instances always propagate.
- Per-logger levels come from LogLevelConfig, but emission is floored to the
    root's effective level. If root is WARNING, child loggers will not emit
    DEBUG/TRACE even if environment requests them.
- The CLI lowers or raises the root threshold through initialize_root()
    (--verbose / --quiet); LOG_ROOT_LEVEL does the same from the environment.

Example:
    >>> from mstair.mediaprofile.xlogging.logger_factory import create_logger
    >>> log = create_logger(__name__)
    >>> with log.prefix_with("[fold 2]"):
    ...     log.info("best params %s", "rbf C=8 gamma=0.125")
"""

from __future__ import annotations

import contextvars
import logging
import os
import re
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any, ClassVar, TextIO

from mstair.mediaprofile.xlogging import logger_util as _lu
from mstair.mediaprofile.xlogging.logger_constants import TRACE, initialize_logger_constants
from mstair.mediaprofile.xlogging.logger_formatter import CoreFormatter
from mstair.mediaprofile.xlogging.logger_util import LogLevelConfig


__all__: list[str] = [
    "CoreLogger",
    "initialize_root",
]

_LOG_ROOT_ATTR_NAME = "_mediaprofile_corelogger_initialized"

_log_prefix: contextvars.ContextVar[str] = contextvars.ContextVar("log_prefix", default="")


class CoreLogger(logging.Logger):
    """
    Application logger that extends logging.Logger with:

    - A TRACE level below DEBUG for per-iteration solver detail.
    - A prefix context manager for scoped message prefixes (fold, pair, medium).
    - Lazy root setup, so library use without the CLI still gets one stderr handler.

    Handlers are not attached directly; all CoreLogger instances propagate
    to the root logger.
    """

    _STACKLEVEL_OFFSET: ClassVar[int] = 1  # the wrapper method (debug/info/...)

    def __init__(
        self,
        name: str,
        level: int | str | None = logging.NOTSET,
    ) -> None:
        initialize_logger_constants()

        if level in {logging.NOTSET, "NOTSET", "", None}:
            level = LogLevelConfig.get_instance().get_effective_level(name, default=logging.NOTSET)
        super().__init__(name, level if level is not None else logging.NOTSET)

        root_level = logging.getLogger().getEffectiveLevel()
        if logging.NOTSET < self.level < root_level:
            self.setLevel(root_level)

    def __repr__(self) -> str:
        level = self.getEffectiveLevel()
        return f"<{self.__class__.__name__} '{self.name}' {logging.getLevelName(level)}={level}>"

    def isEnabledFor(self, level: int) -> bool:
        """Enabled only when both this logger and the root threshold allow ``level``."""
        if level < logging.getLogger().getEffectiveLevel():
            return False
        return super().isEnabledFor(level)

    def _log_with_prefix(self, level: int, msg: object, args: Any, **kwargs: Any) -> None:
        _setup_root()
        if not self.isEnabledFor(level):
            return
        prefix = _log_prefix.get()
        if prefix:
            msg = f"{prefix}{msg}"
        kwargs["stacklevel"] = kwargs.get("stacklevel", 1) + self._STACKLEVEL_OFFSET + 1
        super()._log(level, msg, args, **kwargs)

    def log(self, level: int, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(level, msg, args, **kwargs)

    def trace(self, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(TRACE, msg, args, **kwargs)

    def debug(self, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(logging.DEBUG, msg, args, **kwargs)

    def info(self, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(logging.INFO, msg, args, **kwargs)

    def warning(self, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(logging.WARNING, msg, args, **kwargs)

    def error(self, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(logging.ERROR, msg, args, **kwargs)

    def critical(self, msg: object, *args: Any, **kwargs: Any) -> None:
        self._log_with_prefix(logging.CRITICAL, msg, args, **kwargs)

    def exception(self, msg: object, *args: Any, exc_info: Any = True, **kwargs: Any) -> None:
        self._log_with_prefix(logging.ERROR, msg, args, exc_info=exc_info, **kwargs)

    @contextmanager
    def prefix_with(self, prefix: str) -> Iterator[None]:
        """
        Context manager to prefix all log messages within the current context.

        Prefixes nest: ``[fold 1] > [pair 0-2] > message``. State lives in a
        contextvar, so worker threads started inside the block do not inherit it
        unless they copy the context.

        :param prefix: The prefix string to prepend to all log messages.
        """
        formatted = prefix + " > "
        token = _log_prefix.set(_log_prefix.get() + formatted)
        try:
            yield
        finally:
            _log_prefix.reset(token)


def current_prefix() -> str:
    """Prefix active in the calling context (empty outside prefix_with)."""
    return _log_prefix.get()


def initialize_root(
    *,
    level: int | str | None = None,
    fmt: str | None = None,
    datefmt: str | None = None,
    force: bool = False,
) -> None:
    """
    Configure the root logger for CoreLogger.

    - Ensures exactly one stderr StreamHandler with CoreFormatter exists.
    - ``force=True`` removes and recreates the stderr handler.
    - Sets root level to ``level`` if given, else LOG_ROOT_LEVEL, else WARNING
      when the root is still NOTSET.
    - Never touches non-stderr handlers owned by a host application.
    """
    root = logging.getLogger()
    already = getattr(root, _LOG_ROOT_ATTR_NAME, False)
    if already and not force and level is None:
        return
    setattr(root, _LOG_ROOT_ATTR_NAME, True)
    initialize_logger_constants()

    if force:
        root.handlers = [
            h
            for h in root.handlers
            if not (isinstance(h, logging.StreamHandler) and h.stream is sys.stderr)
        ]
    if not already or force:
        _ensure_stderr_coreformatter(fmt=fmt, datefmt=datefmt)

    if level is None:
        level = _lu.get_root_level_from_environment()
    if level is not None:
        if isinstance(level, str):
            level = logging.getLevelNamesMapping().get(level.upper(), logging.WARNING)
        root.setLevel(level)
    elif root.level == logging.NOTSET:
        root.setLevel(logging.WARNING)

    # Loggers created before the root moved keep their resolved level; re-resolve.
    config = LogLevelConfig.get_instance()
    for existing in list(logging.Logger.manager.loggerDict.values()):
        if isinstance(existing, CoreLogger):
            wanted = config.get_effective_level(existing.name, default=logging.NOTSET)
            existing.setLevel(max(wanted, root.level) if wanted else logging.NOTSET)


def _setup_root() -> None:
    root = logging.getLogger()
    if not getattr(root, _LOG_ROOT_ATTR_NAME, False):
        initialize_root()


def _ensure_stderr_coreformatter(*, fmt: str | None = None, datefmt: str | None = None) -> None:
    """
    Ensure the root logger has one stderr handler using CoreFormatter.

    Env overrides:
    - LOG_FORMAT supplies the format string fallback.
    - LOG_DATEFMT supplies the date format fallback; if it has no '%' tokens,
        timestamp is stripped from the final format.
    """
    fmt = fmt or os.environ.get(
        "LOG_FORMAT",
        r"%(levelName)s %(asctime)s %(name)s %(message)s",
    )
    env_datefmt: str = os.environ.get("LOG_DATEFMT", "%H:%M:%S")
    datefmt = env_datefmt if datefmt is None else datefmt
    if "%" not in datefmt:
        fmt = re.sub(r"\s*%\(asctime\)s\s*", " ", fmt)
        datefmt = None

    root: logging.Logger = logging.getLogger()
    stderr_handlers: list[logging.StreamHandler[TextIO]] = [
        h for h in root.handlers if isinstance(h, logging.StreamHandler) and h.stream is sys.stderr
    ]
    if not stderr_handlers:
        h: logging.StreamHandler[TextIO] = logging.StreamHandler(sys.stderr)
        h.setFormatter(CoreFormatter(fmt, datefmt))
        root.addHandler(h)
        return

    if not any(isinstance(h.formatter, CoreFormatter) for h in stderr_handlers):
        stderr_handlers[0].setFormatter(CoreFormatter(fmt, datefmt))
