"""
Pipeline configuration.

Values are layered, lowest precedence first:

1. built-in defaults (the 5-fold / 3-inner-fold protocol over all families)
2. a TOML file of flat ``key = value`` pairs (``--config``)
3. ``MEDIAPROFILE_<KEY>`` environment variables, with ``.env`` honoured
4. explicit overrides, normally the CLI flags

Example:
    >>> cfg = load_config(None, environ={}, overrides={"seed": 7})
    >>> cfg.seed, cfg.k_outer
    (7, 5)
"""

from __future__ import annotations

import dataclasses
import json
import os
import tomllib
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from mstair.mediaprofile.base.constants import ENV_PREFIX, cache_dir, packaged_resource_dir
from mstair.mediaprofile.base.errors import UsageError
from mstair.mediaprofile.base.fs_helpers import fs_load_dotenv


__all__ = ["ALL_FAMILIES", "ALL_TASKS", "PipelineConfig", "load_config"]

ALL_FAMILIES: tuple[str, ...] = ("traffic", "url", "twitter", "wikipedia", "articles")
ALL_TASKS: tuple[str, ...] = ("factuality", "bias7", "bias3")


def _default_cache_dir() -> Path:
    return cache_dir("mediaprofile", mkdir=False)


@dataclass(frozen=True, slots=True)
class PipelineConfig:
    corpus: Path | None = None
    bundle_root: Path | None = None
    embeddings: Path | None = None
    resource_dir: Path = field(default_factory=packaged_resource_dir)
    families: tuple[str, ...] = ALL_FAMILIES
    tasks: tuple[str, ...] = ALL_TASKS
    k_outer: int = 5
    k_inner: int = 3
    grid: str | tuple[Mapping[str, Any], ...] = "default"
    seed: int = 0
    cache_dir: Path = field(default_factory=_default_cache_dir)
    output_dir: Path = Path("results")
    enable_url_ngrams: bool = False
    ngram_range: tuple[int, int] = (2, 5)
    svm_tol: float = 1e-3
    workers: int = 1

    def __post_init__(self) -> None:
        if self.k_outer < 2 or self.k_inner < 2:
            raise UsageError(f"k_outer and k_inner must be >= 2, got {self.k_outer}/{self.k_inner}")
        bad_tasks = [t for t in self.tasks if t not in ALL_TASKS]
        if bad_tasks or not self.tasks:
            valid = ", ".join(ALL_TASKS)
            raise UsageError(f"unknown task {bad_tasks or self.tasks!r}; valid: {valid}")
        if not self.families:
            raise UsageError("families must not be empty")
        lo, hi = self.ngram_range
        if not 2 <= lo <= hi <= 5:
            raise UsageError(f"ngram_range must lie within [2, 5], got {self.ngram_range}")
        if self.svm_tol <= 0:
            raise UsageError(f"svm_tol must be positive, got {self.svm_tol}")
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")

    def require(self, *keys: str) -> None:
        """Raise UsageError naming every listed path key that is still unset."""
        missing = [k for k in keys if getattr(self, k) is None]
        if missing:
            flags = ", ".join(f"--{k.replace('_', '-')}" for k in missing)
            raise UsageError(f"missing required setting(s): {flags}")

    def to_json(self) -> dict[str, Any]:
        """Plain-JSON echo of the configuration, used in report provenance."""
        out: dict[str, Any] = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Path):
                value = value.as_posix()
            elif isinstance(value, tuple):
                value = [dict(v) if isinstance(v, Mapping) else v for v in value]
            out[f.name] = value
        return out


# ---------- Coercion ----------


def _as_path(value: Any) -> Path:
    if not isinstance(value, (str, os.PathLike)):
        raise TypeError(f"expected a path string, got {type(value).__name__}")
    return Path(value).expanduser()


def _as_str_list(value: Any) -> tuple[str, ...]:
    if isinstance(value, str):
        items = [v.strip() for v in value.replace(";", ",").split(",")]
    elif isinstance(value, (list, tuple)):
        items = [str(v).strip() for v in value]
    else:
        raise TypeError(f"expected a list or comma-separated string, got {type(value).__name__}")
    return tuple(v for v in items if v)


def _as_int(value: Any) -> int:
    if isinstance(value, bool):
        raise TypeError("expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    return int(str(value).strip(), 10)


def _as_float(value: Any) -> float:
    if isinstance(value, bool):
        raise TypeError("expected a number, got a boolean")
    return float(value)


def _as_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"1", "true", "yes", "on"}:
        return True
    if text in {"0", "false", "no", "off", ""}:
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _as_range(value: Any) -> tuple[int, int]:
    if isinstance(value, str):
        value = [v for v in value.replace("-", ",").split(",") if v.strip()]
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ValueError(f"expected two integers, got {value!r}")
    return (_as_int(value[0]), _as_int(value[1]))


def _as_grid(value: Any) -> str | tuple[Mapping[str, Any], ...]:
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            value = json.loads(text)
        else:
            return text
    if not isinstance(value, (list, tuple)) or not all(isinstance(v, Mapping) for v in value):
        raise TypeError("grid must be 'default' or a list of {kind, C, gamma} tables")
    return tuple(dict(v) for v in value)


_COERCERS: dict[str, Callable[[Any], Any]] = {
    "corpus": _as_path,
    "bundle_root": _as_path,
    "embeddings": _as_path,
    "resource_dir": _as_path,
    "families": _as_str_list,
    "tasks": _as_str_list,
    "k_outer": _as_int,
    "k_inner": _as_int,
    "grid": _as_grid,
    "seed": _as_int,
    "cache_dir": _as_path,
    "output_dir": _as_path,
    "enable_url_ngrams": _as_bool,
    "ngram_range": _as_range,
    "svm_tol": _as_float,
    "workers": _as_int,
}


def _coerce(key: str, value: Any, source: str) -> Any:
    coercer = _COERCERS.get(key)
    if coercer is None:
        raise UsageError(f"unknown configuration key {key!r} in {source}")
    try:
        return coercer(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid value for {key!r} in {source}: {exc}") from exc


def _read_toml(path: Path) -> dict[str, Any]:
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"config file {path} is not valid TOML: {exc}") from exc
    return data


def load_config(
    path: Path | str | None = None,
    *,
    environ: Mapping[str, str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> PipelineConfig:
    """
    Build a PipelineConfig from file, environment and explicit overrides.

    :param path: Optional TOML file with flat ``key = value`` pairs.
    :param environ: Environment to read ``MEDIAPROFILE_*`` from; defaults to
        ``os.environ`` after loading ``.env``.
    :param overrides: Highest-precedence values; ``None`` entries are ignored.
    :raises UsageError: For unknown keys, bad values or an unreadable file.
    """
    values: dict[str, Any] = {}

    if path is not None:
        cfg_path = Path(path)
        for key, value in _read_toml(cfg_path).items():
            values[key] = _coerce(key, value, str(cfg_path))

    if environ is None:
        fs_load_dotenv()
        environ = os.environ
    for name, raw in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        key = name.removeprefix(ENV_PREFIX).lower()
        values[key] = _coerce(key, raw, f"${name}")

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        values[key] = _coerce(key, value, "command line")

    return PipelineConfig(**values)
