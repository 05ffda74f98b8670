"""
Stratified k-fold splits.

Per class, fold sizes differ by at most one. When ``k`` exceeds a class's
size that class is missing from some test folds; this is logged as a
warning and the folds still partition every index.
"""

from __future__ import annotations

import hashlib
import warnings
from collections.abc import Sequence

import numpy as np
from sklearn.model_selection import StratifiedKFold

from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["fold_assignment", "fold_digest", "stratified_kfold", "train_test_pairs"]

_LOG = create_logger(__name__)


def stratified_kfold(y: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    """
    ``k`` disjoint, sorted test-index arrays covering ``range(len(y))``.

    :raises ValueError: ``k < 2`` or ``k > len(y)``.
    """
    y = np.asarray(y).astype(np.int64)
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > y.size:
        raise ValueError(f"k={k} exceeds the number of samples ({y.size})")
    classes, counts = np.unique(y, return_counts=True)
    short = [int(c) for c, n in zip(classes, counts, strict=True) if n < k]
    if short:
        _LOG.warning(
            "stratification shortfall: class(es) %s have fewer than k=%d samples "
            "and will be absent from some test folds",
            short,
            k,
        )
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    placeholder = np.zeros((y.size, 1))
    with warnings.catch_warnings():
        # the shortfall is already logged above
        warnings.simplefilter("ignore", UserWarning)
        splits = list(splitter.split(placeholder, y))
    return [np.sort(test) for _, test in splits]


def train_test_pairs(folds: Sequence[np.ndarray], n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """``(train, test)`` index pairs, train being the complement of each test fold."""
    out = []
    for test in folds:
        mask = np.ones(n, dtype=bool)
        mask[test] = False
        out.append((np.flatnonzero(mask), test))
    return out


def fold_assignment(folds: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Fold number of every index."""
    out = np.full(n, -1, dtype=np.int64)
    for f, test in enumerate(folds):
        out[test] = f
    if (out < 0).any():
        raise ValueError("folds do not cover every index")
    return out


def fold_digest(folds: Sequence[np.ndarray], n: int) -> str:
    """SHA-256 of the fold assignment, for report provenance."""
    assignment = fold_assignment(folds, n)
    return hashlib.sha256(assignment.astype("<i8").tobytes()).hexdigest()
