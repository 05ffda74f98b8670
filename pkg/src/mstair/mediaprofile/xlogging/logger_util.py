"""
Environment variable-driven log level configuration.

Two sources are supported:
- Pattern-based DSL strings in LOG_LEVEL / LOG_LEVELS, e.g.
  ``LOG_LEVELS="mstair.mediaprofile.svm.*:DEBUG; root=INFO"``
- Per-logger overrides in variables like LOG_LEVEL_MSTAIR_MEDIAPROFILE_CORPUS

This module resolves the desired level for a given logger name; it does not
modify the root logger. The root threshold is set by the CLI (--verbose /
--quiet) or by LOG_ROOT_LEVEL through initialize_root().
"""

from __future__ import annotations

import fnmatch
import logging
import os
import re
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Final, NamedTuple

from mstair.mediaprofile.base.fs_helpers import fs_load_dotenv
from mstair.mediaprofile.xlogging.logger_constants import initialize_logger_constants


__all__ = ["LogLevelConfig", "get_root_level_from_environment"]

_LOG_VAR_NAME_RX: Final[re.Pattern[str]] = re.compile(
    r"^(?P<BASENAME>LOG_LEVELS?)(?P<SUFFIX>(?:_[A-Z][A-Z0-9_]*)*)$"
)
_LOG_VAR_FRAGMENT_SEPARATOR_RX: Final[re.Pattern[str]] = re.compile(r"[;, ]+")
_LOG_VAR_ASSIGNMENT_OPERATOR_RX: Final[re.Pattern[str]] = re.compile(r"[:=]+")

_log_level_config_instance: LogLevelConfig | None = None


def _level_names_mapping() -> dict[str, int]:
    initialize_logger_constants()
    return {
        k.upper(): v
        for k, v in logging.getLevelNamesMapping().items()
        if isinstance(k, str) and k.isupper() and isinstance(v, int)
    }


def _level_from_text(txt: str, level_map: dict[str, int]) -> int | None:
    """Return numeric level from a name or decimal number string, else None."""
    s = txt.strip().strip("\"'")
    if not s:
        return None
    if s.isdigit():
        return int(s, 10)
    lvl = level_map.get(s.upper())
    if lvl is not None and lvl != logging.NOTSET:
        return lvl
    return None


def get_root_level_from_environment() -> int | None:
    """Return the root logger level from LOG_ROOT_LEVEL, or None if unset/invalid."""
    fs_load_dotenv()
    raw = os.environ.get("LOG_ROOT_LEVEL")
    if not raw:
        return None
    return _level_from_text(raw, _level_names_mapping())


class LogEnvPatternLevel(NamedTuple):
    """Mapping from a logger-name pattern to an integer log level."""

    pattern: str
    level: int


def _module_from_suffix(suffix: str) -> str:
    """LOG_LEVEL_MSTAIR_MEDIAPROFILE -> 'mstair.mediaprofile'; '__' encodes a literal '_'."""
    suffix = suffix.lstrip("_")
    if not suffix or suffix.upper() == "ROOT":
        return ""
    return suffix.replace("__", "\0").replace("_", ".").replace("\0", "_").lower()


def _iter_env_patterns(
    environ: dict[str, str], level_map: dict[str, int]
) -> Iterator[LogEnvPatternLevel]:
    for name, value in sorted(environ.items(), reverse=True):
        match = _LOG_VAR_NAME_RX.match(name)
        if match is None:
            continue
        module = _module_from_suffix(match["SUFFIX"])
        for fragment in _LOG_VAR_FRAGMENT_SEPARATOR_RX.split(value):
            part = fragment.strip()
            if not part:
                continue
            segs = _LOG_VAR_ASSIGNMENT_OPERATOR_RX.split(part, maxsplit=1)
            if len(segs) == 2:
                pattern, level_txt = segs[0].strip().strip("'\""), segs[1]
            else:
                pattern, level_txt = "", segs[0]
            if module:
                pattern = f"{module}.{pattern}" if pattern not in {"", "root"} else module
            if pattern.lower() == "root":
                pattern = ""
            level = _level_from_text(level_txt, level_map)
            if level is not None:
                yield LogEnvPatternLevel(pattern, level)


@dataclass(slots=True)
class LogLevelConfig:
    """
    Resolve log levels using environment variables.

    Precedence: exact > ancestor > glob (longest fixed prefix) > default > fallback.
    """

    pattern_to_level: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.pattern_to_level:
            self.update_from_environment()

    def update_from_environment(self) -> None:
        """Rebuild pattern->level mappings from the current environment."""
        fs_load_dotenv()
        self.pattern_to_level.clear()
        for dsl in _iter_env_patterns(dict(os.environ), _level_names_mapping()):
            self.pattern_to_level[dsl.pattern] = dsl.level

    def get_effective_level(self, logger_name: str, *, default: int = logging.WARNING) -> int:
        """Return the effective log level for a logger name."""
        name_lc = logger_name.lower()
        lc_map = {k.lower(): v for k, v in self.pattern_to_level.items() if k}

        if (exact := lc_map.get(name_lc)) is not None:
            return exact

        parts = name_lc.split(".")
        while len(parts) > 1:
            parts = parts[:-1]
            if (ancestor := lc_map.get(".".join(parts))) is not None:
                return ancestor

        best_level: int | None = None
        best_score = -1
        for pat, level in lc_map.items():
            if not any(ch in pat for ch in "*?["):
                continue
            if fnmatch.fnmatch(name_lc, pat):
                score = min((i for i, ch in enumerate(pat) if ch in "*?["), default=len(pat))
                if score > best_score:
                    best_score, best_level = score, level
        if best_level is not None:
            return best_level

        return self.pattern_to_level.get("", default)

    @classmethod
    def get_instance(cls) -> LogLevelConfig:
        """Return the process-wide LogLevelConfig, creating it on first use."""
        global _log_level_config_instance
        if _log_level_config_instance is None:
            _log_level_config_instance = LogLevelConfig()
        return _log_level_config_instance
