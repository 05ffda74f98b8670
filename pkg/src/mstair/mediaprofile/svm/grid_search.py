"""
Hyper-parameter grids and inner cross-validated grid search.

Candidates are scored by mean macro-F1 over stratified inner folds, the
standardizer being refit inside every inner training fold. The first
candidate with the highest score wins, so grid order breaks ties.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Final

import numpy as np

from mstair.mediaprofile.base.errors import UsageError
from mstair.mediaprofile.evaluation.folds import stratified_kfold, train_test_pairs
from mstair.mediaprofile.evaluation.metrics import compute_metrics
from mstair.mediaprofile.svm.kernels import KernelParams
from mstair.mediaprofile.svm.multiclass import ovo_train, predict_many
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["COARSE_GRID", "DEFAULT_GRID", "GridResult", "grid_search", "make_grid", "parse_grid"]

_LOG = create_logger(__name__)


def make_grid(
    c_exponents: Sequence[int], gamma_exponents: Sequence[int]
) -> tuple[KernelParams, ...]:
    """Linear candidates for every ``C``, then rbf candidates for every ``(C, gamma)``."""
    cs = [2.0**e for e in c_exponents]
    gammas = [2.0**e for e in gamma_exponents]
    linear = [KernelParams("linear", c) for c in cs]
    rbf = [KernelParams("rbf", c, g) for c in cs for g in gammas]
    return (*linear, *rbf)


DEFAULT_GRID: Final = make_grid(range(-5, 16, 2), range(-15, 4, 2))
"""C in 2^-5, 2^-3, ..., 2^15; gamma in 2^-15, ..., 2^3."""

COARSE_GRID: Final = make_grid((-1, 3, 7), (-9, -5, -1))
"""A small grid for smoke runs on synthetic corpora."""

_NAMED_GRIDS: Final[dict[str, tuple[KernelParams, ...]]] = {
    "default": DEFAULT_GRID,
    "coarse": COARSE_GRID,
}


def parse_grid(spec: str | Sequence[Mapping[str, Any]]) -> tuple[KernelParams, ...]:
    """
    Resolve a grid name (``default``, ``coarse``) or a list of ``{kind, C, gamma}`` tables.

    :raises UsageError: unknown name, empty list or an invalid entry.
    """
    if isinstance(spec, str):
        grid = _NAMED_GRIDS.get(spec.strip().lower())
        if grid is None:
            raise UsageError(f"unknown grid {spec!r}; valid: {', '.join(_NAMED_GRIDS)}")
        return grid
    if not spec:
        raise UsageError("grid must not be empty")
    out: list[KernelParams] = []
    for i, entry in enumerate(spec):
        try:
            out.append(KernelParams.from_json(dict(entry)))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"invalid grid entry #{i + 1} {dict(entry)!r}: {exc}") from exc
    return tuple(out)


@dataclass(frozen=True, slots=True)
class GridResult:
    best: KernelParams
    best_score: float | None
    """Mean inner macro-F1 of ``best``; ``None`` when the grid has a single candidate."""
    scores: tuple[tuple[KernelParams, float], ...] = ()
    """Mean inner macro-F1 per candidate, in grid order."""


def grid_search(
    X: np.ndarray,
    y: np.ndarray,
    grid: Sequence[KernelParams],
    k_inner: int,
    seed: int,
    *,
    tol: float = 1e-3,
    workers: int = 1,
) -> GridResult:
    """
    Pick the candidate with the highest mean inner-fold macro-F1.

    :param workers: threads used to score distinct candidates concurrently.
    :raises ValueError: empty grid or ``k_inner < 2``.
    :raises TrainingError: an inner model fails to train.
    """
    if not grid:
        raise ValueError("grid must not be empty")
    if k_inner < 2:
        raise ValueError(f"k_inner must be >= 2, got {k_inner}")
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y).astype(np.int64)
    k = int(y.max()) + 1
    splits = train_test_pairs(stratified_kfold(y, k_inner, seed), y.size)

    def score(p: KernelParams) -> float:
        f1s = []
        for train, test in splits:
            model = ovo_train(X[train], y[train], p, tol=tol)
            f1s.append(compute_metrics(y[test], predict_many(model, X[test]), k).macro_f1)
        mean = float(np.mean(f1s))
        _LOG.trace("inner macro-F1 %.4f for %s", mean, p.label())
        return mean

    if len(grid) == 1:
        return GridResult(grid[0], None)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(score, grid))
    else:
        values = [score(p) for p in grid]

    best_i = 0
    for i, value in enumerate(values):
        if value > values[best_i]:
            best_i = i
    _LOG.debug(
        "grid search over %d candidates: best %s (macro-F1 %.4f)",
        len(grid),
        grid[best_i].label(),
        values[best_i],
    )
    return GridResult(grid[best_i], values[best_i], tuple(zip(grid, values, strict=True)))
