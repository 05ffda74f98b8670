"""
Per-column z-scoring fit on training rows only.

Columns whose training stddev is below ``MIN_STDDEV`` carry no information
and are mapped to 0 on every later ``apply``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Final

import numpy as np
from sklearn.preprocessing import StandardScaler


__all__ = ["MIN_STDDEV", "StandardizerStats", "standardize_apply", "standardize_fit"]

MIN_STDDEV: Final = 1e-12


@dataclass(frozen=True, slots=True)
class StandardizerStats:
    mean: np.ndarray
    stddev: np.ndarray
    """Population stddev (``ddof=0``)."""

    @property
    def n_features(self) -> int:
        return int(self.mean.shape[0])

    def to_json(self) -> dict[str, Any]:
        return {"mean": self.mean.tolist(), "stddev": self.stddev.tolist()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> StandardizerStats:
        mean = np.asarray(data["mean"], dtype=np.float64)
        stddev = np.asarray(data["stddev"], dtype=np.float64)
        if mean.shape != stddev.shape or mean.ndim != 1:
            raise ValueError(f"mean/stddev shapes differ: {mean.shape} vs {stddev.shape}")
        return cls(mean, stddev)


def standardize_fit(X: np.ndarray) -> StandardizerStats:
    """
    Column means and population stddevs of ``X``.

    :raises ValueError: ``X`` is not a non-empty 2-D matrix.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {X.shape}")
    if X.shape[1] == 0:
        return StandardizerStats(np.zeros(0), np.zeros(0))
    scaler = StandardScaler().fit(X)
    mean = np.asarray(scaler.mean_, dtype=np.float64)
    stddev = np.sqrt(np.asarray(scaler.var_, dtype=np.float64))
    mean.setflags(write=False)
    stddev.setflags(write=False)
    return StandardizerStats(mean, stddev)


def standardize_apply(stats: StandardizerStats, X: np.ndarray) -> np.ndarray:
    """
    ``(x - mean) / stddev`` per column; degenerate columns become 0.

    :raises ValueError: column count differs from the fitted one.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != stats.n_features:
        raise ValueError(f"expected {stats.n_features} columns, got shape {X.shape}")
    flat = stats.stddev < MIN_STDDEV
    out = (X - stats.mean) / np.where(flat, 1.0, stats.stddev)
    out[:, flat] = 0.0
    return out
