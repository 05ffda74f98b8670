"""
Ordinal classification metrics: accuracy, macro-F1, MAE and macro-averaged MAE.

Labels are ordinals ``0 .. K-1``. Macro-F1 averages over all ``K`` classes,
scoring 0 for a class with no true and no predicted members. ``mae_macro``
averages per-class MAE over the classes present in ``y_true`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from sklearn.metrics import accuracy_score, confusion_matrix, f1_score, mean_absolute_error


__all__ = ["MetricSet", "compute_metrics", "confusion", "majority_baseline", "majority_class"]


@dataclass(frozen=True, slots=True)
class MetricSet:
    accuracy: float
    macro_f1: float
    mae: float
    mae_macro: float

    def to_json(self) -> dict[str, float]:
        return {
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "mae": self.mae,
            "mae_macro": self.mae_macro,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> MetricSet:
        return cls(
            accuracy=float(data["accuracy"]),
            macro_f1=float(data["macro_f1"]),
            mae=float(data["mae"]),
            mae_macro=float(data["mae_macro"]),
        )

    def rounded(self) -> tuple[float, float, float, float]:
        """``(macro-F1 %, accuracy %, MAE, MAE^M)`` at two decimals, in table column order."""
        return (
            round(100.0 * self.macro_f1, 2),
            round(100.0 * self.accuracy, 2),
            round(self.mae, 2),
            round(self.mae_macro, 2),
        )


def _check(y_true: np.ndarray, y_pred: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(y_true).astype(np.int64).ravel()
    p = np.asarray(y_pred).astype(np.int64).ravel()
    if t.size != p.size:
        raise ValueError(f"y_true has {t.size} labels but y_pred has {p.size}")
    if t.size == 0:
        raise ValueError("metrics need at least one label")
    if k < 1:
        raise ValueError(f"class count must be >= 1, got {k}")
    for name, arr in (("y_true", t), ("y_pred", p)):
        if arr.min() < 0 or arr.max() >= k:
            raise ValueError(f"{name} has labels outside [0, {k})")
    return t, p


def compute_metrics(y_true: np.ndarray, y_pred: np.ndarray, k: int) -> MetricSet:
    """
    Accuracy, macro-F1, MAE and MAE^M of ordinal predictions.

    :raises ValueError: length mismatch, no labels, or a label outside ``[0, k)``.
    """
    t, p = _check(y_true, y_pred, k)
    errors = np.abs(p - t).astype(np.float64)
    per_class = [float(errors[t == c].mean()) for c in np.unique(t)]
    return MetricSet(
        accuracy=float(accuracy_score(t, p)),
        macro_f1=float(
            f1_score(t, p, labels=list(range(k)), average="macro", zero_division=0.0)
        ),
        mae=float(mean_absolute_error(t, p)),
        mae_macro=float(np.mean(per_class)),
    )


def confusion(y_true: np.ndarray, y_pred: np.ndarray, k: int) -> np.ndarray:
    """``k x k`` counts; rows are gold classes, columns predictions."""
    t, p = _check(y_true, y_pred, k)
    return confusion_matrix(t, p, labels=list(range(k))).astype(np.int64)


def majority_class(labels: np.ndarray, k: int) -> int:
    """Most frequent label; ties go to the lowest class."""
    counts = np.bincount(np.asarray(labels).astype(np.int64), minlength=k)
    return int(np.argmax(counts))


def majority_baseline(labels: np.ndarray, k: int) -> tuple[int, MetricSet]:
    """Predict the most frequent label for every item and score that."""
    t = np.asarray(labels).astype(np.int64)
    c = majority_class(t, k)
    return c, compute_metrics(t, np.full_like(t, c), k)
