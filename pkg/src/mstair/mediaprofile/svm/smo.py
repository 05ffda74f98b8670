"""
Binary soft-margin SVM trained by sequential minimal optimization.

The solver works on signed multipliers ``a_i = alpha_i * y_i`` with box
``min(0, y_i C) <= a_i <= max(0, y_i C)`` and ``sum(a) = 0``, and keeps the
gradient ``g_i = y_i - sum_j a_j K_ij`` of the dual up to date. Each step
picks the maximal violating pair:

- ``i``: largest ``g`` among rows that may still increase
- ``j``: smallest ``g`` among rows that may still decrease

and moves both by the same amount. Training stops once ``g_i - g_j <= tol``,
which bounds every KKT violation by ``tol``. Ties in the arg-max/arg-min go to
the lowest row index, so a run is fully determined by its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Final

import numpy as np

from mstair.mediaprofile.base.errors import TrainingError
from mstair.mediaprofile.svm.kernels import KernelParams, kernel_matrix
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["BinaryModel", "dual_objective", "smo_train"]

_LOG = create_logger(__name__)

_TAU: Final = 1e-12
"""Floor for the curvature along the working pair (duplicated rows give 0)."""


@dataclass(frozen=True, slots=True)
class BinaryModel:
    support_vectors: np.ndarray
    dual_coef: np.ndarray
    """``alpha_i * y_i`` for each support vector."""
    intercept: float
    params: KernelParams
    support: np.ndarray
    """Row indices of the support vectors in the training matrix."""
    n_iter: int = 0
    converged: bool = True

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if self.dual_coef.size == 0:
            return np.full(X.shape[0], self.intercept)
        K = kernel_matrix(X, self.support_vectors, self.params)
        return K @ self.dual_coef + self.intercept

    def predict(self, X: np.ndarray) -> np.ndarray:
        """``+1`` where the decision value is >= 0, else ``-1``."""
        return np.where(self.decision_function(X) >= 0.0, 1, -1)

    def alphas(self, n_train: int) -> np.ndarray:
        """Multipliers for all ``n_train`` training rows; non-support rows are 0."""
        out = np.zeros(n_train)
        out[self.support] = np.abs(self.dual_coef)
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "params": self.params.to_json(),
            "support": self.support.tolist(),
            "support_vectors": self.support_vectors.tolist(),
            "dual_coef": self.dual_coef.tolist(),
            "intercept": self.intercept,
            "n_iter": self.n_iter,
            "converged": self.converged,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> BinaryModel:
        dual_coef = np.asarray(data["dual_coef"], dtype=np.float64)
        vectors = np.asarray(data["support_vectors"], dtype=np.float64)
        if dual_coef.size == 0:
            vectors = vectors.reshape(0, 0)
        elif vectors.ndim != 2 or vectors.shape[0] != dual_coef.size:
            raise ValueError(
                f"{dual_coef.size} dual coefficients for support vectors of shape {vectors.shape}"
            )
        return cls(
            support_vectors=vectors,
            dual_coef=dual_coef,
            intercept=float(data["intercept"]),
            params=KernelParams.from_json(data["params"]),
            support=np.asarray(data.get("support", []), dtype=np.intp),
            n_iter=int(data.get("n_iter", 0)),
            converged=bool(data.get("converged", True)),
        )


def dual_objective(alpha: np.ndarray, y: np.ndarray, K: np.ndarray) -> float:
    """``sum(alpha) - 1/2 * sum_ij alpha_i alpha_j y_i y_j K_ij``."""
    a = np.asarray(alpha, dtype=np.float64) * np.asarray(y, dtype=np.float64)
    return float(np.sum(alpha) - 0.5 * a @ K @ a)


def _validate(X: np.ndarray, y: np.ndarray) -> None:
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ValueError(f"X of shape {X.shape} does not match labels of shape {y.shape}")
    if not np.isin(y, (-1, 1)).all():
        raise ValueError("binary labels must be -1 or +1")
    if not ((y == 1).any() and (y == -1).any()):
        raise TrainingError("single-class input: both +1 and -1 labels are required")
    if not np.isfinite(X).all():
        raise TrainingError("non-finite feature value in training data")


def _intercept(g: np.ndarray, a: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> float:
    free = (a > lo) & (a < hi)
    if free.any():
        return float(np.mean(g[free]))
    up, low = a < hi, a > lo
    top = float(np.max(g[up])) if up.any() else None
    bottom = float(np.min(g[low])) if low.any() else None
    if top is None:
        return bottom if bottom is not None else 0.0
    if bottom is None:
        return top
    return (top + bottom) / 2.0


def smo_train(
    X: np.ndarray,
    y: np.ndarray,
    p: KernelParams,
    *,
    tol: float = 1e-3,
    max_passes: int | None = None,
) -> BinaryModel:
    """
    Solve the soft-margin dual for ``(X, y)``.

    :param y: labels in ``{-1, +1}``.
    :param tol: bound on the KKT violation at termination.
    :param max_passes: iteration cap in units of ``n`` pair updates; defaults
        to ``10 * n``. Hitting the cap logs a warning and returns the current
        iterate.
    :raises TrainingError: single-class labels or a non-finite feature.
    :raises ValueError: shape mismatch or labels outside ``{-1, +1}``.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y).astype(np.int64)
    _validate(X, y)
    n = X.shape[0]
    yf = y.astype(np.float64)
    K = kernel_matrix(X, X, p)
    diag = np.diag(K).copy()
    lo = np.minimum(0.0, yf * p.C)
    hi = np.maximum(0.0, yf * p.C)

    a = np.zeros(n)
    g = yf.copy()
    cap = (10 * n if max_passes is None else max_passes) * n
    n_iter = 0
    converged = False
    gap = np.inf
    while True:
        up = a < hi
        low = a > lo
        if not (up.any() and low.any()):
            converged = True
            break
        i = int(np.argmax(np.where(up, g, -np.inf)))
        j = int(np.argmin(np.where(low, g, np.inf)))
        gap = float(g[i] - g[j])
        if gap <= tol:
            converged = True
            break
        if n_iter >= cap:
            break
        eta = max(diag[i] + diag[j] - 2.0 * K[i, j], _TAU)
        step = min(hi[i] - a[i], a[j] - lo[j], gap / eta)
        a[i] = min(a[i] + step, hi[i])
        a[j] = max(a[j] - step, lo[j])
        g -= step * (K[i] - K[j])
        n_iter += 1
        if n_iter % 1000 == 0:
            _LOG.trace("smo iteration %d: gap %.3g", n_iter, gap)

    if not converged:
        _LOG.warning(
            "SMO reached its iteration cap (%d) with KKT gap %.3g > tol %.3g (n=%d, %s)",
            cap,
            gap,
            tol,
            n,
            p.label(),
        )

    g = yf - K @ a
    b = _intercept(g, a, lo, hi)
    support = np.flatnonzero(a != 0.0)
    _LOG.debug(
        "smo: n=%d iterations=%d support=%d b=%.4g %s", n, n_iter, support.size, b, p.label()
    )
    return BinaryModel(
        support_vectors=X[support].copy(),
        dual_coef=a[support].copy(),
        intercept=b,
        params=p,
        support=support,
        n_iter=n_iter,
        converged=converged,
    )
