"""
Nested cross-validation of the one-vs-one SVM and per-feature-subset result tables.

For every outer fold the grid is searched on the training rows only, the
winning parameters are refit on all training rows, and the test rows are
predicted. Pooled metrics are taken over the union of out-of-fold
predictions; per-fold metrics are reported alongside.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any, Final

import numpy as np

from mstair.mediaprofile.base.config import PipelineConfig
from mstair.mediaprofile.base.errors import TrainingError, UsageError
from mstair.mediaprofile.corpus.labels import map_bias_7_to_3, num_classes
from mstair.mediaprofile.evaluation.folds import fold_digest, stratified_kfold, train_test_pairs
from mstair.mediaprofile.evaluation.metrics import (
    MetricSet,
    compute_metrics,
    confusion,
    majority_baseline,
)
from mstair.mediaprofile.evaluation.tables import ResultTable
from mstair.mediaprofile.features.featurizer import FeatureMatrix
from mstair.mediaprofile.svm.grid_search import grid_search, parse_grid
from mstair.mediaprofile.svm.kernels import KernelParams
from mstair.mediaprofile.svm.multiclass import ovo_train, predict_many
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = [
    "PER_FEATURE_SUBSETS",
    "EvalReport",
    "EvalSettings",
    "cross_validate",
    "map_labels_7_to_3",
    "per_feature_subsets",
    "run_family_table",
    "selector_label",
]

_LOG = create_logger(__name__)

PER_FEATURE_SUBSETS: Final[tuple[str, ...]] = (
    "traffic:rank",
    "url:structure",
    "twitter:created",
    "twitter:has_account",
    "twitter:verified",
    "twitter:has_location",
    "twitter:url_match",
    "twitter:description",
    "twitter:counts",
    "twitter:*",
    "wikipedia:has_page",
    "wikipedia:toc",
    "wikipedia:categories",
    "wikipedia:infobox",
    "wikipedia:summary",
    "wikipedia:content",
    "wikipedia:*",
    "articles:title",
    "articles:body",
)
"""Every single feature, then the whole family, for each family in source order."""


@dataclass(frozen=True, slots=True)
class EvalSettings:
    grid: tuple[KernelParams, ...]
    k_outer: int = 5
    k_inner: int = 3
    seed: int = 0
    tol: float = 1e-3
    workers: int = 1

    @classmethod
    def from_config(cls, cfg: PipelineConfig) -> EvalSettings:
        return cls(
            grid=parse_grid(cfg.grid),
            k_outer=cfg.k_outer,
            k_inner=cfg.k_inner,
            seed=cfg.seed,
            tol=cfg.svm_tol,
            workers=cfg.workers,
        )


@dataclass(frozen=True, slots=True)
class EvalReport:
    label: str
    task: str
    selectors: tuple[str, ...]
    n_features: int
    pooled: MetricSet
    folds: tuple[MetricSet, ...]
    confusion: np.ndarray
    fold_confusions: tuple[np.ndarray, ...]
    chosen: tuple[KernelParams, ...]
    predictions: tuple[int, ...]
    seed: int
    fold_digest: str
    manifest_hash: str = ""
    mapped3: MetricSet | None = None
    """bias7 only: pooled metrics after folding gold and predicted labels to 3-way."""

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "task": self.task,
            "selectors": list(self.selectors),
            "n_features": self.n_features,
            "pooled": self.pooled.to_json(),
            "folds": [m.to_json() for m in self.folds],
            "confusion": self.confusion.tolist(),
            "fold_confusions": [c.tolist() for c in self.fold_confusions],
            "chosen_params": [p.to_json() for p in self.chosen],
            "predictions": list(self.predictions),
            "seed": self.seed,
            "fold_digest": self.fold_digest,
            "manifest_hash": self.manifest_hash,
            "mapped3": self.mapped3.to_json() if self.mapped3 is not None else None,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> EvalReport:
        mapped3 = data.get("mapped3")
        return cls(
            label=str(data["label"]),
            task=str(data["task"]),
            selectors=tuple(str(s) for s in data["selectors"]),
            n_features=int(data["n_features"]),
            pooled=MetricSet.from_json(data["pooled"]),
            folds=tuple(MetricSet.from_json(m) for m in data["folds"]),
            confusion=np.asarray(data["confusion"], dtype=np.int64),
            fold_confusions=tuple(
                np.asarray(c, dtype=np.int64) for c in data.get("fold_confusions", ())
            ),
            chosen=tuple(KernelParams.from_json(p) for p in data["chosen_params"]),
            predictions=tuple(int(v) for v in data.get("predictions", ())),
            seed=int(data["seed"]),
            fold_digest=str(data["fold_digest"]),
            manifest_hash=str(data.get("manifest_hash", "")),
            mapped3=MetricSet.from_json(mapped3) if mapped3 is not None else None,
        )


def map_labels_7_to_3(labels: np.ndarray) -> np.ndarray:
    return np.asarray([map_bias_7_to_3(int(v)) for v in labels], dtype=np.int64)


def selector_label(selectors: str | Sequence[str]) -> str:
    items = [selectors] if isinstance(selectors, str) else list(selectors)
    return " + ".join(items)


def cross_validate(
    features: FeatureMatrix,
    labels: np.ndarray,
    task: str,
    settings: EvalSettings,
    *,
    selectors: str | Sequence[str] | None = None,
    label: str | None = None,
) -> EvalReport:
    """
    Outer stratified k-fold CV with an inner grid search per fold.

    :param labels: ordinal labels row-aligned with ``features``.
    :param selectors: feature selectors to use; all families when omitted.
    :raises UnknownFamilyError: a selector names no known family or feature.
    :raises TrainingError: annotated with the outer fold that failed.
    """
    y = np.asarray(labels).astype(np.int64)
    if y.shape != (len(features),):
        raise ValueError(f"{y.size} labels for {len(features)} feature rows")
    chosen_selectors = list(features.manifest.families) if selectors is None else selectors
    columns = features.manifest.select(chosen_selectors)
    sel = tuple([chosen_selectors] if isinstance(chosen_selectors, str) else chosen_selectors)
    X = features.rows[:, columns]
    k = num_classes(task)

    folds = stratified_kfold(y, settings.k_outer, settings.seed)
    pred = np.full(y.size, -1, dtype=np.int64)
    fold_metrics: list[MetricSet] = []
    fold_confusions: list[np.ndarray] = []
    chosen: list[KernelParams] = []
    for f, (train, test) in enumerate(train_test_pairs(folds, y.size)):
        with _LOG.prefix_with(f"[{task} {selector_label(sel)} fold {f}]"):
            try:
                gs = grid_search(
                    X[train],
                    y[train],
                    settings.grid,
                    settings.k_inner,
                    settings.seed,
                    tol=settings.tol,
                    workers=settings.workers,
                )
                model = ovo_train(X[train], y[train], gs.best, tol=settings.tol)
            except TrainingError as exc:
                raise exc.with_context(fold=f) from exc
            score = "n/a" if gs.best_score is None else f"{gs.best_score:.4f}"
            _LOG.info("chosen %s (inner macro-F1 %s)", gs.best.label(), score)
            pred[test] = predict_many(model, X[test])
        chosen.append(gs.best)
        fold_metrics.append(compute_metrics(y[test], pred[test], k))
        fold_confusions.append(confusion(y[test], pred[test], k))

    mapped3 = None
    if task == "bias7":
        mapped3 = compute_metrics(map_labels_7_to_3(y), map_labels_7_to_3(pred), 3)
    pooled = compute_metrics(y, pred, k)
    _LOG.debug("%s %s pooled macro-F1 %.4f", task, selector_label(sel), pooled.macro_f1)
    return EvalReport(
        label=label or selector_label(sel),
        task=task,
        selectors=sel,
        n_features=int(columns.size),
        pooled=pooled,
        folds=tuple(fold_metrics),
        confusion=confusion(y, pred, k),
        fold_confusions=tuple(fold_confusions),
        chosen=tuple(chosen),
        predictions=tuple(int(v) for v in pred),
        seed=settings.seed,
        fold_digest=fold_digest(folds, y.size),
        manifest_hash=features.manifest.digest(),
        mapped3=mapped3,
    )


def run_family_table(
    features: FeatureMatrix,
    labels: np.ndarray,
    task: str,
    subsets: Sequence[str | Sequence[str]],
    settings: EvalSettings,
) -> ResultTable:
    """
    One cross-validated row per feature subset, led by the majority baseline.

    :raises UsageError: no subsets requested.
    :raises UnknownFamilyError: a subset is empty or names an unknown selector.
    """
    if not subsets:
        raise UsageError("no feature subsets requested")
    for subset in subsets:
        features.manifest.select(subset)
    y = np.asarray(labels).astype(np.int64)
    _, baseline = majority_baseline(y, num_classes(task))
    rows = tuple(cross_validate(features, y, task, settings, selectors=s) for s in subsets)
    return ResultTable(
        kind="results",
        task=task,
        title=f"Results for {task}",
        rows=rows,
        baseline=baseline,
        provenance={"seed": settings.seed, "manifest_hash": features.manifest.digest()},
    )


def per_feature_subsets(features: FeatureMatrix) -> list[str]:
    """``PER_FEATURE_SUBSETS``, with ``url:ngrams`` after the URL structure when extracted."""
    subsets = list(PER_FEATURE_SUBSETS)
    if "url:ngrams" in features.manifest.valid_selectors():
        subsets.insert(subsets.index("url:structure") + 1, "url:ngrams")
    return subsets
