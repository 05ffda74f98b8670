"""
mstair.mediaprofile.svm public API.
"""

from mstair.mediaprofile.svm.grid_search import (
    COARSE_GRID,
    DEFAULT_GRID,
    GridResult,
    grid_search,
    make_grid,
    parse_grid,
)
from mstair.mediaprofile.svm.kernels import KernelKind, KernelParams, kernel_eval, kernel_matrix
from mstair.mediaprofile.svm.multiclass import (
    MultiModel,
    decision_function,
    load_model,
    ovo_train,
    predict,
    predict_many,
    save_model,
)
from mstair.mediaprofile.svm.smo import BinaryModel, dual_objective, smo_train
from mstair.mediaprofile.svm.standardize import (
    MIN_STDDEV,
    StandardizerStats,
    standardize_apply,
    standardize_fit,
)


__all__ = [
    "COARSE_GRID",
    "DEFAULT_GRID",
    "MIN_STDDEV",
    "BinaryModel",
    "GridResult",
    "KernelKind",
    "KernelParams",
    "MultiModel",
    "StandardizerStats",
    "decision_function",
    "dual_objective",
    "grid_search",
    "kernel_eval",
    "kernel_matrix",
    "load_model",
    "make_grid",
    "ovo_train",
    "parse_grid",
    "predict",
    "predict_many",
    "save_model",
    "smo_train",
    "standardize_apply",
    "standardize_fit",
]
