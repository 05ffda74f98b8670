from __future__ import annotations

import logging
import os
import sys
from typing import Any, Literal

from colorama import Fore, Style

from mstair.mediaprofile.xlogging.logger_constants import TRACE


__all__ = ["CoreFormatter", "get_color_code", "use_color"]


FormatStyle = Literal["%", "{", "$"]

COLOR_MAP: dict[str | None, str] = {
    "TRACE": Fore.MAGENTA,
    "DEBUG": Style.DIM,
    "INFO": Fore.LIGHTBLACK_EX,
    "WARNING": Fore.YELLOW,
    "ERROR": Fore.LIGHTRED_EX,
    "CRITICAL": Fore.RED + Style.BRIGHT,
    "name": Fore.CYAN,
    None: Style.RESET_ALL,
}


def use_color() -> bool:
    """Colour only interactive stderr; NO_COLOR and FORCE_COLOR override detection."""
    if os.environ.get("NO_COLOR"):
        return False
    if os.environ.get("FORCE_COLOR"):
        return True
    stream = sys.stderr
    return bool(getattr(stream, "isatty", None) and stream.isatty())


def get_color_code(key: Any = None) -> str:
    if not use_color():
        return ""
    if key in {"", "RESET"} or key is None:
        return Style.RESET_ALL
    return COLOR_MAP.get(key, Style.RESET_ALL)


class CoreFormatter(logging.Formatter):
    """
    Formatter for CoreLogger records.

    Adds ``levelName`` (colour-wrapped level name) and colours the logger
    ``name``; the record's own fields are never mutated, so other handlers on
    the same record still see plain text.
    """

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        style: FormatStyle = "%",
        validate: bool = True,
        *,
        defaults: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(fmt=fmt, datefmt=datefmt, style=style, validate=validate, defaults=defaults)

    def format(self, record: logging.LogRecord) -> str:
        original_name = record.name
        record.levelName = get_color_code(record.levelname) + record.levelname + get_color_code()
        record.name = get_color_code("name") + f"[{original_name}]" + get_color_code()
        try:
            return super().format(record)
        except Exception as exc:
            return f"(LOGGING ERROR: {exc!r}) {record.msg!r} % {record.args!r}"
        finally:
            record.name = original_name
