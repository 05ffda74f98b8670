"""
Kernel hyper-parameters and kernel evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Literal, get_args

import numpy as np
from sklearn.metrics.pairwise import linear_kernel, rbf_kernel


__all__ = ["KernelKind", "KernelParams", "kernel_eval", "kernel_matrix"]

KernelKind = Literal["linear", "rbf"]


def _pow2(value: float) -> str:
    exp = math.log2(value)
    return f"2^{int(exp)}" if exp.is_integer() else f"{value:g}"


@dataclass(frozen=True, slots=True)
class KernelParams:
    """
    One grid point: kernel kind, box constraint ``C`` and rbf width ``gamma``.

    ``gamma`` is kept for linear kernels but never used.
    """

    kind: KernelKind
    C: float
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in get_args(KernelKind):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if not (math.isfinite(self.C) and self.C > 0):
            raise ValueError(f"C must be positive, got {self.C}")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def label(self) -> str:
        if self.kind == "linear":
            return f"linear(C={_pow2(self.C)})"
        return f"rbf(C={_pow2(self.C)}, gamma={_pow2(self.gamma)})"

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "C": self.C, "gamma": self.gamma}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> KernelParams:
        kind: Any = str(data["kind"])
        return cls(kind, float(data["C"]), float(data.get("gamma", 1.0)))


def kernel_eval(x: np.ndarray, z: np.ndarray, p: KernelParams) -> float:
    """
    ``<x, z>`` for linear, ``exp(-gamma * ||x - z||^2)`` for rbf.

    :raises ValueError: the vectors differ in length.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    z = np.asarray(z, dtype=np.float64).ravel()
    if x.shape != z.shape:
        raise ValueError(f"kernel inputs differ in length: {x.shape[0]} != {z.shape[0]}")
    if p.kind == "linear":
        return float(np.dot(x, z))
    diff = x - z
    return float(np.exp(-p.gamma * np.dot(diff, diff)))


def kernel_matrix(A: np.ndarray, B: np.ndarray, p: KernelParams) -> np.ndarray:
    """
    Gram matrix ``K[i, j] = k(A[i], B[j])``.

    :raises ValueError: the row lengths of ``A`` and ``B`` differ.
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"kernel inputs differ in length: {A.shape[1]} != {B.shape[1]}")
    if A.shape[1] == 0:
        # no features: every point coincides
        fill = 0.0 if p.kind == "linear" else 1.0
        return np.full((A.shape[0], B.shape[0]), fill)
    if p.kind == "linear":
        return linear_kernel(A, B)
    return rbf_kernel(A, B, gamma=p.gamma)
