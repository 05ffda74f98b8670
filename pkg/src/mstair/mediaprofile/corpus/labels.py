"""
Label scales and codecs.

Factuality is a 3-point ordinal scale, bias a 7-point one; the 3-point bias
scale is derived by folding the extremes into Left/Right and the three centre
grades into Center.
"""

from __future__ import annotations

from typing import Final, Literal


__all__ = [
    "BIAS3_LABELS",
    "BIAS7_LABELS",
    "FACTUALITY_LABELS",
    "TASKS",
    "Task",
    "decode_label",
    "encode_bias7",
    "encode_factuality",
    "map_bias_7_to_3",
    "num_classes",
]

Task = Literal["factuality", "bias7", "bias3"]
TASKS: Final[tuple[Task, ...]] = ("factuality", "bias7", "bias3")

FACTUALITY_LABELS: Final[tuple[str, ...]] = ("Low", "Mixed", "High")
BIAS7_LABELS: Final[tuple[str, ...]] = (
    "Extreme-Left",
    "Left",
    "Center-Left",
    "Center",
    "Center-Right",
    "Right",
    "Extreme-Right",
)
BIAS3_LABELS: Final[tuple[str, ...]] = ("Left", "Center", "Right")

_FACTUALITY_CODES: Final[dict[str, int]] = {
    **{name.lower(): i for i, name in enumerate(FACTUALITY_LABELS)},
    "very high": 2,
}
_BIAS7_CODES: Final[dict[str, int]] = {name.lower(): i for i, name in enumerate(BIAS7_LABELS)}
_BIAS_7_TO_3: Final[tuple[int, ...]] = (0, 0, 1, 1, 1, 2, 2)

_LABELS_BY_TASK: Final[dict[str, tuple[str, ...]]] = {
    "factuality": FACTUALITY_LABELS,
    "bias7": BIAS7_LABELS,
    "bias3": BIAS3_LABELS,
}


def encode_factuality(text: str) -> int:
    """``"Very High"`` folds into High. Matching ignores case and surrounding blanks."""
    code = _FACTUALITY_CODES.get(text.strip().lower())
    if code is None:
        raise ValueError(f"unknown factuality label {text!r}")
    return code


def encode_bias7(text: str) -> int:
    code = _BIAS7_CODES.get(text.strip().lower())
    if code is None:
        raise ValueError(f"unknown bias label {text!r}")
    return code


def map_bias_7_to_3(bias7: int) -> int:
    """
    Fold the 7-point bias scale onto Left/Center/Right.

    {Extreme-Left, Left} -> Left, {Center-Left, Center, Center-Right} -> Center,
    {Right, Extreme-Right} -> Right.

    :raises ValueError: if ``bias7`` is outside 0..6.
    """
    if isinstance(bias7, bool) or not 0 <= bias7 <= 6:
        raise ValueError(f"bias7 ordinal must be in [0, 6], got {bias7!r}")
    return _BIAS_7_TO_3[bias7]


def num_classes(task: str) -> int:
    return len(_labels(task))


def decode_label(task: str, ordinal: int) -> str:
    labels = _labels(task)
    if not 0 <= ordinal < len(labels):
        raise ValueError(f"{task} ordinal must be in [0, {len(labels)}), got {ordinal!r}")
    return labels[ordinal]


def _labels(task: str) -> tuple[str, ...]:
    try:
        return _LABELS_BY_TASK[task]
    except KeyError:
        raise ValueError(f"unknown task {task!r}; valid: {', '.join(TASKS)}") from None
