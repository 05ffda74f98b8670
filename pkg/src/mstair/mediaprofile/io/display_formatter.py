"""
Text rendering of result rows (ASCII-only).

``DisplayFormatter`` turns lists of dictionaries into:

- pretty-printed JSON via ``to_json()`` (sorted keys, so output is byte-stable)
- markdown tables via ``to_markdown()``, numbers right-aligned

Example:
    >>> fmt = DisplayFormatter()
    >>> print(fmt.to_markdown([{"Features": "traffic", "Macro-F1": 31.5}]))
    | Features | Macro-F1 |
    | :------- | -------: |
    | traffic  |    31.50 |
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from typing import Any

from mstair.mediaprofile.base.constants import DEFAULT_INDENT


__all__ = ["DisplayFormatter", "format_cell"]


def format_cell(value: Any, *, digits: int = 2) -> str:
    """Floats at ``digits`` decimals, ``None`` as ``-``, anything else via ``str``."""
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{digits}f}"
    return str(value)


def _is_numeric(values: Sequence[Any]) -> bool:
    present = [v for v in values if v is not None]
    return bool(present) and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in present
    )


class DisplayFormatter:
    def __init__(self, digits: int = 2) -> None:
        self.digits = digits

    def to_json(self, data: Any) -> str:
        """Pretty-printed JSON with sorted keys and ASCII escapes."""
        return json.dumps(data, ensure_ascii=True, indent=DEFAULT_INDENT, sort_keys=True)

    def _cells(
        self, rows: list[dict[str, Any]], columns: list[str] | None
    ) -> tuple[list[str], list[list[str]], dict[str, bool]]:
        cols = columns or list(rows[0].keys())
        numeric = {c: _is_numeric([r.get(c) for r in rows]) for c in cols}
        cells = [[format_cell(r.get(c), digits=self.digits) for c in cols] for r in rows]
        return cols, cells, numeric

    def to_markdown(self, rows: list[dict[str, Any]], columns: list[str] | None = None) -> str:
        """Render rows as an aligned markdown table; numeric columns are right-aligned."""
        if not rows:
            return "_(no data)_"
        cols, cells, numeric = self._cells(rows, columns)
        widths = [
            max(len(c), 3, *(len(line[i]) for line in cells)) for i, c in enumerate(cols)
        ]

        def line(values: Sequence[str]) -> str:
            padded = [
                v.rjust(w) if numeric[c] else v.ljust(w)
                for v, w, c in zip(values, widths, cols, strict=True)
            ]
            return "| " + " | ".join(padded) + " |"

        rule = [
            ("-" * (w - 1) + ":") if numeric[c] else (":" + "-" * (w - 1))
            for w, c in zip(widths, cols, strict=True)
        ]
        header = "| " + " | ".join(c.ljust(w) for c, w in zip(cols, widths, strict=True)) + " |"
        return "\n".join([header, "| " + " | ".join(rule) + " |", *(line(r) for r in cells)])
