"""
Tests for the SMO binary solver, with analytic and numerical oracles.
"""

from __future__ import annotations

import itertools
import logging

import numpy as np
import pytest
from scipy.optimize import minimize

from mstair.mediaprofile.base.errors import TrainingError
from mstair.mediaprofile.svm.kernels import KernelParams, kernel_matrix
from mstair.mediaprofile.svm.smo import BinaryModel, dual_objective, smo_train


_XOR_X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
_XOR_Y = np.array([1, -1, -1, 1])


def _kkt_violation(model: BinaryModel, X: np.ndarray, y: np.ndarray) -> float:
    """Largest KKT violation of a trained model on its training rows."""
    C = model.params.C
    alpha = model.alphas(len(y))
    margin = y * model.decision_function(X)
    worst = 0.0
    for a, m in zip(alpha, margin, strict=True):
        if a == 0.0:
            worst = max(worst, (1.0 - m))
        elif a == C:
            worst = max(worst, (m - 1.0))
        else:
            worst = max(worst, abs(m - 1.0))
    return worst


def _random_instance(seed: int) -> tuple[np.ndarray, np.ndarray, KernelParams]:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    X = rng.normal(size=(n, 2))
    y = rng.choice([-1, 1], size=n)
    y[0], y[1] = 1, -1
    C = float(rng.choice([0.5, 1.0, 4.0]))
    if seed % 2:
        return X, y, KernelParams("rbf", C, float(rng.choice([0.5, 1.0, 2.0])))
    return X, y, KernelParams("linear", C)


def _slsqp_optimum(K: np.ndarray, y: np.ndarray, C: float) -> float:
    n = len(y)
    result = minimize(
        lambda a: -dual_objective(a, y, K),
        x0=np.zeros(n),
        jac=lambda a: -(1.0 - y * (K @ (a * y))),
        bounds=[(0.0, C)] * n,
        constraints=[{"type": "eq", "fun": lambda a: a @ y, "jac": lambda a: y.astype(float)}],
        method="SLSQP",
        options={"ftol": 1e-12, "maxiter": 500},
    )
    return -float(result.fun)


def _grid_optimum(K: np.ndarray, y: np.ndarray, C: float, steps: int = 10) -> float:
    """Best dual objective over a lattice of feasible multipliers."""
    n = len(y)
    levels = np.linspace(0.0, C, steps + 1)
    head = np.array(list(itertools.product(levels, repeat=n - 1)))
    last = -y[-1] * (head @ y[:-1])
    feasible = (last >= -1e-12) & (last <= C + 1e-12)
    alphas = np.column_stack([head, np.clip(last, 0.0, C)])[feasible]
    signed = alphas * y
    values = alphas.sum(axis=1) - 0.5 * np.einsum("ij,jk,ik->i", signed, K, signed)
    return float(values.max())


# ---------- Analytic cases ----------


class TestAnalytic:
    def test_two_point_max_margin(self) -> None:
        X = np.array([[0.0], [1.0]])
        model = smo_train(X, np.array([1, -1]), KernelParams("linear", 10.0))
        np.testing.assert_allclose(model.alphas(2), [2.0, 2.0], atol=1e-6)
        assert model.intercept == pytest.approx(1.0, abs=1e-6)
        xs = np.linspace(-2.0, 3.0, 11).reshape(-1, 1)
        np.testing.assert_allclose(model.decision_function(xs), 1.0 - 2.0 * xs.ravel(), atol=1e-6)

    def test_xor_not_linearly_separable(self) -> None:
        model = smo_train(_XOR_X, _XOR_Y, KernelParams("linear", 10.0))
        assert np.mean(model.predict(_XOR_X) == _XOR_Y) <= 0.75

    def test_xor_rbf_separates(self) -> None:
        p = KernelParams("rbf", 10.0, 1.0)
        model = smo_train(_XOR_X, _XOR_Y, p)
        assert np.mean(model.predict(_XOR_X) == _XOR_Y) == 1.0
        K = kernel_matrix(_XOR_X, _XOR_X, p)
        assert dual_objective(model.alphas(4), _XOR_Y, K) >= _grid_optimum(K, _XOR_Y, 10.0) - 1e-9


# ---------- Optimality ----------


class TestOptimality:
    @pytest.mark.parametrize("seed", range(20))
    def test_matches_numerical_optimum(self, seed: int) -> None:
        X, y, p = _random_instance(seed)
        K = kernel_matrix(X, X, p)
        model = smo_train(X, y, p, tol=1e-6)
        achieved = dual_objective(model.alphas(len(y)), y, K)
        assert achieved == pytest.approx(_slsqp_optimum(K, y, p.C), abs=1e-3)
        assert achieved >= _grid_optimum(K, y, p.C) - 1e-4

    @pytest.mark.parametrize("seed", range(20))
    def test_feasibility_and_kkt(self, seed: int) -> None:
        X, y, p = _random_instance(seed)
        model = smo_train(X, y, p, tol=1e-3)
        alpha = model.alphas(len(y))
        assert np.all(alpha >= 0.0) and np.all(alpha <= p.C)
        assert abs(alpha @ y) <= 1e-8
        assert model.converged
        assert _kkt_violation(model, X, y) <= 1e-3 + 1e-9

    def test_kkt_on_larger_overlapping_data(self) -> None:
        rng = np.random.default_rng(11)
        X = np.vstack([rng.normal(0.0, 1.0, (30, 3)), rng.normal(0.8, 1.0, (30, 3))])
        y = np.array([1] * 30 + [-1] * 30)
        for p in (KernelParams("linear", 1.0), KernelParams("rbf", 4.0, 0.5)):
            model = smo_train(X, y, p)
            assert _kkt_violation(model, X, y) <= 1e-3 + 1e-9
            assert abs(model.alphas(60) @ y) <= 1e-8


# ---------- Invariances ----------


class TestInvariance:
    def test_row_permutation(self) -> None:
        rng = np.random.default_rng(5)
        X = np.vstack([rng.normal(-2.0, 0.5, (10, 2)), rng.normal(2.0, 0.5, (10, 2))])
        y = np.array([1] * 10 + [-1] * 10)
        perm = rng.permutation(20)
        p = KernelParams("rbf", 1.0, 0.5)
        queries = rng.normal(0.0, 2.0, (15, 2))
        a = smo_train(X, y, p, tol=1e-6).decision_function(queries)
        b = smo_train(X[perm], y[perm], p, tol=1e-6).decision_function(queries)
        np.testing.assert_allclose(a, b, atol=1e-4)

    def test_feature_scaling_with_gamma(self) -> None:
        rng = np.random.default_rng(6)
        X = rng.normal(size=(16, 2))
        y = np.where(X[:, 0] * X[:, 1] > 0, 1, -1)
        y[0], y[1] = 1, -1
        queries = rng.normal(size=(10, 2))
        a = smo_train(X, y, KernelParams("rbf", 2.0, 1.0))
        b = smo_train(5.0 * X, y, KernelParams("rbf", 2.0, 1.0 / 25.0))
        np.testing.assert_allclose(
            a.decision_function(queries), b.decision_function(5.0 * queries), atol=1e-6
        )

    def test_deterministic(self) -> None:
        X, y, p = _random_instance(3)
        a, b = smo_train(X, y, p), smo_train(X, y, p)
        np.testing.assert_array_equal(a.dual_coef, b.dual_coef)
        assert a.intercept == b.intercept


# ---------- Errors and limits ----------


class TestErrors:
    def test_single_class(self) -> None:
        with pytest.raises(TrainingError, match="single-class"):
            smo_train(np.ones((3, 2)), np.array([1, 1, 1]), KernelParams("linear", 1.0))

    def test_non_finite(self) -> None:
        X = np.array([[0.0], [np.nan]])
        with pytest.raises(TrainingError, match="non-finite"):
            smo_train(X, np.array([1, -1]), KernelParams("linear", 1.0))

    def test_bad_labels(self) -> None:
        with pytest.raises(ValueError):
            smo_train(np.ones((2, 1)), np.array([0, 1]), KernelParams("linear", 1.0))

    def test_iteration_cap_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        rng = np.random.default_rng(2)
        X = rng.normal(size=(30, 2))
        y = np.where(rng.random(30) > 0.5, 1, -1)
        y[0], y[1] = 1, -1
        with caplog.at_level(logging.WARNING):
            model = smo_train(X, y, KernelParams("rbf", 100.0, 1.0), tol=1e-9, max_passes=0)
        assert not model.converged
        assert model.n_iter == 0
        assert "iteration cap" in caplog.text

    def test_duplicate_rows_with_opposite_labels(self) -> None:
        X = np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0], [2.0, 2.0]])
        y = np.array([1, -1, 1, -1])
        model = smo_train(X, y, KernelParams("linear", 1.0))
        alpha = model.alphas(4)
        assert np.all((alpha >= 0.0) & (alpha <= 1.0))
        assert abs(alpha @ y) <= 1e-8


class TestSerialization:
    def test_json_round_trip_keeps_decisions(self) -> None:
        X, y, p = _random_instance(7)
        model = smo_train(X, y, p)
        back = BinaryModel.from_json(model.to_json())
        np.testing.assert_allclose(back.decision_function(X), model.decision_function(X))
        assert back.params == p
