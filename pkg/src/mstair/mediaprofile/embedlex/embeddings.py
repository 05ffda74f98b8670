"""
word2vec embedding tables (text and binary formats) and mean-vector lookups.

Files are read with gensim's ``KeyedVectors.load_word2vec_format``. Text format:
a ``<vocab_size> <dim>`` header line, then ``token v1 ... vdim`` per line with
single spaces. Binary format: the same header line, then per entry the token
bytes, a single space and ``dim`` little-endian float32 values.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from gensim.models import KeyedVectors

from mstair.mediaprofile.base.errors import EmbeddingParseError
from mstair.mediaprofile.base.fs_helpers import StrPath
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["EmbeddingTable", "avg_embedding", "load_embeddings", "read_embedding_header"]

_LOG = create_logger(__name__)


@dataclass(frozen=True, slots=True)
class EmbeddingTable:
    """Immutable token -> vector table; ``vectors[index[token]]`` is the row."""

    dim: int
    index: dict[str, int] = field(repr=False)
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.vectors.shape != (len(self.index), self.dim):
            raise ValueError(
                f"vectors shape {self.vectors.shape} != ({len(self.index)}, {self.dim})"
            )
        self.vectors.setflags(write=False)

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, token: object) -> bool:
        return token in self.index

    def get(self, token: str) -> np.ndarray | None:
        """Vector of ``token`` or ``None`` when out of vocabulary."""
        row = self.index.get(token)
        return None if row is None else self.vectors[row]

    @classmethod
    def from_mapping(
        cls, mapping: dict[str, Iterable[float]], dim: int | None = None
    ) -> EmbeddingTable:
        """Build a table in memory; mostly for tests and synthetic resources."""
        rows = {tok: np.asarray(list(vec), dtype=np.float64) for tok, vec in mapping.items()}
        if dim is None:
            dim = len(next(iter(rows.values()))) if rows else 1
        for tok, vec in rows.items():
            if vec.shape != (dim,):
                raise ValueError(f"vector for {tok!r} has {vec.size} values, expected {dim}")
        vectors = np.vstack(list(rows.values())) if rows else np.zeros((0, dim))
        return cls(dim, {tok: i for i, tok in enumerate(rows)}, vectors)


def avg_embedding(tokens: Iterable[str], table: EmbeddingTable) -> np.ndarray:
    """
    Arithmetic mean of the in-vocabulary token vectors.

    Out-of-vocabulary tokens are skipped; with none left the result is the
    zero vector of length ``table.dim``.
    """
    rows = [r for t in tokens if (r := table.index.get(t)) is not None]
    if not rows:
        return np.zeros(table.dim, dtype=np.float64)
    return table.vectors[rows].mean(axis=0)


def _parse_header(line: bytes | str, path: Path) -> tuple[int, int]:
    text = line.decode("utf-8", errors="replace") if isinstance(line, bytes) else line
    parts = text.split()
    try:
        if len(parts) != 2:
            raise ValueError
        vocab_size, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingParseError(
            f"{path}: header must be '<vocab_size> <dim>', got {text.strip()!r}"
        ) from None
    if vocab_size < 0 or dim <= 0:
        raise EmbeddingParseError(f"{path}: invalid header sizes {vocab_size} x {dim}")
    return vocab_size, dim


def read_embedding_header(path: StrPath) -> tuple[int, int]:
    """``(vocab_size, dim)`` from the first line, without reading the vectors."""
    p = Path(path)
    with p.open("rb") as fh:
        return _parse_header(fh.readline(), p)


def _is_binary(path: Path, binary: bool | None) -> bool:
    return binary if binary is not None else path.suffix.lower() == ".bin"


def _load_vectors(path: Path, binary: bool) -> EmbeddingTable:
    with path.open("rb") as fh:
        vocab_size, dim = _parse_header(fh.readline(), path)
    try:
        kv = KeyedVectors.load_word2vec_format(str(path), binary=binary)
    except EOFError:
        raise EmbeddingParseError(
            f"{path}: truncated, fewer than the {vocab_size} entries the header announces"
        ) from None
    except ValueError as exc:
        raise EmbeddingParseError(f"{path}: {exc}") from exc
    vectors = np.asarray(kv.vectors, dtype=np.float64).reshape(len(kv.index_to_key), dim)
    bad = ~np.isfinite(vectors).all(axis=1)
    if bad.any():
        token = kv.index_to_key[int(np.argmax(bad))]
        raise EmbeddingParseError(f"{path}: non-finite value for {token!r}")
    if len(kv.index_to_key) != vocab_size:
        _LOG.warning("%s: header announces %d tokens, kept %d", path, vocab_size, len(kv))
    index = {str(token): row for row, token in enumerate(kv.index_to_key)}
    return EmbeddingTable(dim, index, vectors)


def load_embeddings(path: StrPath, *, binary: bool | None = None) -> EmbeddingTable:
    """
    Load a word2vec table; the format follows ``binary`` or else the ``.bin`` suffix.

    Duplicate tokens keep their first vector.

    :raises EmbeddingParseError: bad header, a malformed or missing entry, or a non-finite value.
    :raises FileNotFoundError: the file does not exist.
    """
    p = Path(path)
    table = _load_vectors(p, _is_binary(p, binary))
    _LOG.info("loaded %d embeddings of dim %d from %s", len(table), table.dim, p)
    return table
