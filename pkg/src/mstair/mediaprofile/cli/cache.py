"""
Persistent feature cache backed by diskcache.

Two kinds of entries live in one ``diskcache.Cache`` directory:

- medium rows, keyed by a SHA-256 over (medium id, URL, bundle hash,
  manifest digest); the manifest digest already covers the resource and
  embedding fingerprints
- the assembled feature matrix of the last extraction, under a fixed key
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from pathlib import Path
from types import TracebackType
from typing import Any, Final

import diskcache
import numpy as np

from mstair.mediaprofile.base.constants import MANIFEST_VERSION
from mstair.mediaprofile.base.errors import StaleCacheError, UsageError
from mstair.mediaprofile.base.fs_helpers import StrPath
from mstair.mediaprofile.corpus.loaders import labels_for_task
from mstair.mediaprofile.corpus.records import MediumRecord
from mstair.mediaprofile.features.featurizer import FeatureMatrix
from mstair.mediaprofile.features.manifest import FeatureManifest
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["MATRIX_KEY", "CachedFeatures", "FeatureCache", "row_key"]

_LOG = create_logger(__name__)

MATRIX_KEY: Final = "feature-matrix"
_SIZE_LIMIT: Final = 1 << 30  # 1 GiB


def row_key(medium_id: str, url: str, bundle_hash: str, manifest_digest: str) -> str:
    """Cache key of one medium's feature row."""
    text = json.dumps([medium_id, url, bundle_hash, manifest_digest])
    return "row:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True, slots=True)
class CachedFeatures:
    """An extracted feature matrix and the labelled records of its rows."""

    matrix: FeatureMatrix
    records: tuple[MediumRecord, ...]

    def __post_init__(self) -> None:
        if tuple(r.medium_id for r in self.records) != self.matrix.medium_ids:
            raise ValueError("cached records are not row-aligned with the feature matrix")

    @property
    def manifest_hash(self) -> str:
        return self.matrix.manifest.digest()

    def labels(self, task: str) -> np.ndarray:
        return labels_for_task(self.records, task)


class FeatureCache:
    """
    Thin wrapper over ``diskcache.Cache`` counting row hits and misses.

    Use as a context manager so the underlying SQLite handle is closed.
    """

    def __init__(self, directory: StrPath) -> None:
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._cache = diskcache.Cache(directory=str(self.directory), size_limit=_SIZE_LIMIT)
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def __enter__(self) -> FeatureCache:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()

    def close(self) -> None:
        self._cache.close()

    # ---------- rows ----------

    def get_row(self, key: str, dim: int) -> np.ndarray | None:
        """The cached row, or ``None`` on a miss or a malformed entry."""
        value = self._cache.get(key)
        hit = isinstance(value, np.ndarray) and value.shape == (dim,)
        with self._lock:
            if hit:
                self.hits += 1
            else:
                self.misses += 1
        return value if hit else None

    def put_row(self, key: str, row: np.ndarray) -> None:
        self._cache.set(key, np.asarray(row, dtype=np.float64))

    def log_stats(self) -> None:
        _LOG.info(
            "feature cache %s: %d hit(s), %d miss(es)", self.directory, self.hits, self.misses
        )

    # ---------- assembled matrix ----------

    def save_features(self, features: CachedFeatures) -> None:
        matrix = features.matrix
        self._cache.set(
            MATRIX_KEY,
            {
                "medium_ids": list(matrix.medium_ids),
                "rows": matrix.rows,
                "manifest": matrix.manifest.to_json(),
                "manifest_hash": features.manifest_hash,
                "skipped": list(matrix.skipped),
                "records": list(features.records),
            },
        )

    def load_features(self) -> CachedFeatures:
        """
        The matrix written by the last extraction.

        :raises UsageError: nothing has been extracted into this cache yet.
        :raises StaleCacheError: the stored manifest no longer matches its recorded hash.
        """
        entry: Any = self._cache.get(MATRIX_KEY)
        if not isinstance(entry, dict):
            raise UsageError(
                f"no extracted features in cache {self.directory}; run `mediaprofile extract` first"
            )
        try:
            manifest = FeatureManifest.from_json(entry["manifest"])
        except ValueError:
            raise StaleCacheError(
                MANIFEST_VERSION, str(entry["manifest"].get("version"))
            ) from None
        matrix = FeatureMatrix(
            medium_ids=tuple(entry["medium_ids"]),
            rows=np.asarray(entry["rows"], dtype=np.float64),
            manifest=manifest,
            skipped=tuple(entry["skipped"]),
        )
        if manifest.digest() != entry["manifest_hash"]:
            raise StaleCacheError(str(entry["manifest_hash"]), manifest.digest())
        return CachedFeatures(matrix, tuple(entry["records"]))
