"""
One-vs-one multi-class SVM.

A model holds one binary SVM per unordered class pair ``(a, b)`` with
``a < b``; the binary problem labels class ``a`` as ``+1``. Prediction is a
majority vote over pairs. A zero decision value votes for ``a`` and vote ties
go to the lowest class, so prediction is deterministic.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Any

import numpy as np

from mstair.mediaprofile.base.constants import DEFAULT_INDENT, MODEL_VERSION
from mstair.mediaprofile.base.errors import ModelFormatError, TrainingError
from mstair.mediaprofile.base.fs_helpers import StrPath, fs_atomic_write_text
from mstair.mediaprofile.svm.kernels import KernelParams
from mstair.mediaprofile.svm.smo import BinaryModel, smo_train
from mstair.mediaprofile.svm.standardize import (
    StandardizerStats,
    standardize_apply,
    standardize_fit,
)
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = [
    "MultiModel",
    "decision_function",
    "load_model",
    "ovo_train",
    "predict",
    "predict_many",
    "save_model",
]

_LOG = create_logger(__name__)


@dataclass(frozen=True, slots=True)
class MultiModel:
    classes: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    models: tuple[BinaryModel, ...]
    stats: StandardizerStats
    params: KernelParams
    manifest_hash: str = ""
    selectors: tuple[str, ...] = ()
    """Feature selectors the columns were taken with."""

    def __post_init__(self) -> None:
        k = len(self.classes)
        if k < 2:
            raise ValueError(f"a multi-class model needs at least two classes, got {self.classes}")
        if len(self.pairs) != k * (k - 1) // 2 or len(self.models) != len(self.pairs):
            raise ValueError(
                f"{len(self.models)} models for {len(self.pairs)} pairs of {k} classes"
            )

    @property
    def n_features(self) -> int:
        return self.stats.n_features

    def to_json(self) -> dict[str, Any]:
        return {
            "version": MODEL_VERSION,
            "manifest_hash": self.manifest_hash,
            "selectors": list(self.selectors),
            "classes": list(self.classes),
            "params": self.params.to_json(),
            "stats": self.stats.to_json(),
            "pairs": [
                {"pair": list(pair), **model.to_json()}
                for pair, model in zip(self.pairs, self.models, strict=True)
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> MultiModel:
        """:raises ModelFormatError: missing or unsupported version, or a malformed field."""
        version = data.get("version")
        if version is None:
            raise ModelFormatError("model document has no version field")
        if str(version) != MODEL_VERSION:
            raise ModelFormatError(f"model version {version!r} != {MODEL_VERSION}")
        try:
            pairs = [(int(e["pair"][0]), int(e["pair"][1])) for e in data["pairs"]]
            return cls(
                classes=tuple(int(c) for c in data["classes"]),
                pairs=tuple(pairs),
                models=tuple(BinaryModel.from_json(e) for e in data["pairs"]),
                stats=StandardizerStats.from_json(data["stats"]),
                params=KernelParams.from_json(data["params"]),
                manifest_hash=str(data.get("manifest_hash", "")),
                selectors=tuple(str(s) for s in data.get("selectors", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"malformed model document: {exc}") from exc


def ovo_train(
    X: np.ndarray,
    y: np.ndarray,
    p: KernelParams,
    *,
    tol: float = 1e-3,
    max_passes: int | None = None,
    manifest_hash: str = "",
    selectors: Sequence[str] = (),
    workers: int = 1,
) -> MultiModel:
    """
    Standardize ``X`` and train one binary SVM per class pair.

    :param y: ordinal class labels; at least two distinct values.
    :param workers: threads used to train distinct pairs concurrently.
    :raises TrainingError: fewer than two classes, non-finite features, or a
        failed pair (annotated with that pair).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y).astype(np.int64)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ValueError(f"X of shape {X.shape} does not match labels of shape {y.shape}")
    classes = tuple(int(c) for c in np.unique(y))
    if len(classes) < 2:
        raise TrainingError(f"need at least two classes, got {list(classes)}")
    if not np.isfinite(X).all():
        raise TrainingError("non-finite feature value in training data")

    stats = standardize_fit(X)
    Z = standardize_apply(stats, X)
    pairs = tuple(combinations(classes, 2))

    def train_pair(pair: tuple[int, int]) -> BinaryModel:
        a, b = pair
        mask = (y == a) | (y == b)
        labels = np.where(y[mask] == a, 1, -1)
        try:
            return smo_train(Z[mask], labels, p, tol=tol, max_passes=max_passes)
        except TrainingError as exc:
            raise exc.with_context(pair=pair) from exc

    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            models = tuple(pool.map(train_pair, pairs))
    else:
        models = tuple(train_pair(pair) for pair in pairs)
    _LOG.debug("trained %d pairwise models on %d rows with %s", len(pairs), len(y), p.label())
    return MultiModel(
        classes=classes,
        pairs=pairs,
        models=models,
        stats=stats,
        params=p,
        manifest_hash=manifest_hash,
        selectors=tuple(selectors),
    )


def decision_function(model: MultiModel, X: np.ndarray) -> np.ndarray:
    """Pairwise decision values, shape ``(n, n_pairs)``, on raw (unscaled) rows."""
    Z = standardize_apply(model.stats, np.atleast_2d(np.asarray(X, dtype=np.float64)))
    return np.column_stack([m.decision_function(Z) for m in model.models])


def predict_many(model: MultiModel, X: np.ndarray) -> np.ndarray:
    scores = decision_function(model, X)
    n = scores.shape[0]
    index = {c: i for i, c in enumerate(model.classes)}
    votes = np.zeros((n, len(model.classes)), dtype=np.int64)
    rows = np.arange(n)
    for col, (a, b) in enumerate(model.pairs):
        winner = np.where(scores[:, col] >= 0.0, index[a], index[b])
        np.add.at(votes, (rows, winner), 1)
    # argmax takes the first maximum, i.e. the lowest class
    return np.asarray(model.classes, dtype=np.int64)[np.argmax(votes, axis=1)]


def predict(model: MultiModel, x: np.ndarray) -> int:
    return int(predict_many(model, np.asarray(x, dtype=np.float64).reshape(1, -1))[0])


def save_model(path: StrPath, model: MultiModel) -> Path:
    text = json.dumps(model.to_json(), indent=DEFAULT_INDENT, sort_keys=True)
    return fs_atomic_write_text(path, text + "\n")


def load_model(path: StrPath) -> MultiModel:
    """:raises ModelFormatError: unreadable JSON or an invalid model document."""
    target = Path(path)
    try:
        data = json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}", path=target) from exc
    if not isinstance(data, dict):
        raise ModelFormatError("model document must be a JSON object", path=target)
    try:
        return MultiModel.from_json(data)
    except ModelFormatError as exc:
        raise ModelFormatError(str(exc), path=target) from exc
