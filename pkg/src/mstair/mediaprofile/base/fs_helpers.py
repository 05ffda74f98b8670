"""
File System Helpers
"""

from __future__ import annotations

import hashlib
import logging
import os
from collections.abc import Iterable
from pathlib import Path
from typing import IO, TypeAlias

import dotenv


StrPath: TypeAlias = str | Path

_HASH_CHUNK = 1 << 20

_dotenv_loaded = False


def fs_load_dotenv(
    *,
    logger: logging.Logger | None = None,
    dotenv_path: StrPath | None = None,
    stream: IO[str] | None = None,
    override: bool = False,
    force: bool = False,
) -> bool:
    """
    Parse a .env file and load the variables found into the environment.

    Only the first call per process searches for the file unless ``force`` or an
    explicit ``dotenv_path``/``stream`` is given.

    :param logger: Logger for dotenv warnings; enables verbose mode when supplied.
    :param dotenv_path: Absolute or relative path to .env file.
    :param stream: Text stream with .env content, used if `dotenv_path` is `None`.
    :param override: Whether .env values replace variables already in the environment.
    :param force: Search and load again even if a previous call already did.
    :return: True if at least one environment variable is set else False
    """
    global _dotenv_loaded
    explicit = dotenv_path is not None or stream is not None
    if _dotenv_loaded and not (force or explicit):
        return False
    if not explicit:
        _dotenv_loaded = True
    verbose = False
    if logger is not None:
        dotenv.main.logger = logger
        verbose = True
    if dotenv_path is None and stream is None:
        dotenv_path = dotenv.find_dotenv(usecwd=True)
        if not dotenv_path:
            return False
    return dotenv.load_dotenv(
        dotenv_path=dotenv_path,
        stream=stream,
        verbose=verbose,
        override=override,
        encoding="utf-8",
    )


def fs_sha256_file(path: StrPath) -> str:
    """Return the hex sha256 of a file's bytes, streaming in 1 MiB chunks."""
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        while chunk := fh.read(_HASH_CHUNK):
            h.update(chunk)
    return h.hexdigest()


def fs_sha256_tree(paths: Iterable[StrPath], *, extra: Iterable[str] = ()) -> str:
    """
    Return one sha256 over several files plus extra string tokens.

    Each file contributes its POSIX name and its bytes, so renaming a lexicon
    changes the digest even when its content does not. Files are visited in
    sorted name order.
    """
    h = hashlib.sha256()
    for p in sorted((Path(x) for x in paths), key=lambda q: q.as_posix()):
        h.update(p.name.encode("utf-8"))
        h.update(b"\0")
        with p.open("rb") as fh:
            while chunk := fh.read(_HASH_CHUNK):
                h.update(chunk)
        h.update(b"\0")
    for token in extra:
        h.update(token.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def fs_atomic_write_text(path: StrPath, text: str) -> Path:
    """Write text to ``path`` through a sibling temp file and an atomic rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_name(f".{target.name}.{os.getpid()}.tmp")
    tmp.write_text(text, encoding="utf-8", newline="\n")
    tmp.replace(target)
    return target
