from __future__ import annotations

import os
from importlib import resources
from pathlib import Path


DEFAULT_INDENT = 2

MANIFEST_VERSION = "1"
"""Bumped whenever a feature definition changes; part of every cache key."""

MODEL_VERSION = "1"
"""Version field of saved model and report JSON documents."""

ENV_PREFIX = "MEDIAPROFILE_"


def cache_dir(
    subdir: str | None = None,
    mkdir: bool = True,
) -> Path:
    """Get the cache directory path.

    :param subdir: Optional subdirectory name.
    :param mkdir: Whether to create the directory if it doesn't exist.
    """
    result = Path(os.environ.get("CACHE_DIR", Path.cwd() / ".cache"))
    if subdir:
        result /= subdir
    if mkdir:
        result.mkdir(parents=True, exist_ok=True)
    return Path(result.resolve().as_posix())


def packaged_resource_dir() -> Path:
    """Directory of the lexicons and word lists that ship with the package."""
    return Path(str(resources.files("mstair.mediaprofile") / "resources"))
