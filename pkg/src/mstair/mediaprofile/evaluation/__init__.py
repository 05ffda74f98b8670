"""
mstair.mediaprofile.evaluation public API.

The cross-validation protocol and the ablation harness train SVMs and live in
``evaluation.protocol`` and ``evaluation.ablation``; import them from there.
"""

from mstair.mediaprofile.evaluation.folds import (
    fold_assignment,
    fold_digest,
    stratified_kfold,
    train_test_pairs,
)
from mstair.mediaprofile.evaluation.metrics import (
    MetricSet,
    compute_metrics,
    confusion,
    majority_baseline,
    majority_class,
)
from mstair.mediaprofile.evaluation.tables import TASK_ORDER, ResultTable, render_tables, sort_tables


__all__ = [
    "TASK_ORDER",
    "MetricSet",
    "ResultTable",
    "compute_metrics",
    "confusion",
    "fold_assignment",
    "fold_digest",
    "majority_baseline",
    "majority_class",
    "render_tables",
    "sort_tables",
    "stratified_kfold",
    "train_test_pairs",
]
