"""
Result and ablation tables: a majority-baseline row followed by one row per
cross-validated report, in the column order Macro-F1, Acc., MAE, MAE^M.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Final, Literal

from mstair.mediaprofile.base.constants import MODEL_VERSION
from mstair.mediaprofile.base.errors import ModelFormatError
from mstair.mediaprofile.evaluation.metrics import MetricSet
from mstair.mediaprofile.io.display_formatter import DisplayFormatter


if TYPE_CHECKING:
    from mstair.mediaprofile.evaluation.protocol import EvalReport


__all__ = ["TASK_ORDER", "ResultTable", "TableKind", "render_tables", "sort_tables"]

TableKind = Literal["results", "ablation"]

TASK_ORDER: Final[tuple[str, ...]] = ("factuality", "bias7", "bias3")

_METRIC_COLUMNS: Final = ("Macro-F1", "Acc.", "MAE", "MAE^M")


def _metric_cells(m: MetricSet) -> dict[str, float]:
    return dict(zip(_METRIC_COLUMNS, m.rounded(), strict=True))


@dataclass(frozen=True, slots=True)
class ResultTable:
    kind: TableKind
    task: str
    title: str
    rows: tuple[EvalReport, ...]
    baseline: MetricSet
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def deltas(self) -> tuple[float, ...]:
        """Macro-F1 of each row minus that of the first row, in points."""
        if not self.rows:
            return ()
        ref = self.rows[0].pooled.macro_f1
        return tuple(round(100.0 * (r.pooled.macro_f1 - ref), 2) for r in self.rows)

    def display_rows(self) -> list[dict[str, Any]]:
        base: dict[str, Any] = {"Features": "Majority Baseline", "Dim": None}
        base.update(_metric_cells(self.baseline))
        out = [base]
        deltas = self.deltas()
        for i, report in enumerate(self.rows):
            row: dict[str, Any] = {"Features": report.label, "Dim": report.n_features}
            row.update(_metric_cells(report.pooled))
            row["F1 fold-mean"] = round(
                100.0 * sum(m.macro_f1 for m in report.folds) / max(1, len(report.folds)), 2
            )
            if self.kind == "ablation":
                row["Delta F1"] = deltas[i]
            out.append(row)
        if self.kind == "ablation":
            base["Delta F1"] = None
        base["F1 fold-mean"] = None
        return out

    def to_markdown(self, formatter: DisplayFormatter | None = None) -> str:
        fmt = formatter or DisplayFormatter()
        columns = ["Features", "Dim", *_METRIC_COLUMNS, "F1 fold-mean"]
        if self.kind == "ablation":
            columns.append("Delta F1")
        parts = [f"### {self.title}", "", fmt.to_markdown(self.display_rows(), columns)]
        mapped = [r for r in self.rows if r.mapped3 is not None]
        if mapped:
            rows = [{"Features": r.label, **_metric_cells(r.mapped3)} for r in mapped if r.mapped3]
            parts += [
                "",
                "7-way predictions folded to 3-way:",
                "",
                fmt.to_markdown(rows, ["Features", *_METRIC_COLUMNS]),
            ]
        return "\n".join(parts)

    def to_json(self) -> dict[str, Any]:
        return {
            "version": MODEL_VERSION,
            "kind": self.kind,
            "task": self.task,
            "title": self.title,
            "baseline": self.baseline.to_json(),
            "rows": [r.to_json() for r in self.rows],
            "deltas": list(self.deltas()) if self.kind == "ablation" else None,
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ResultTable:
        """:raises ModelFormatError: wrong version or a malformed field."""
        from mstair.mediaprofile.evaluation.protocol import EvalReport

        if str(data.get("version")) != MODEL_VERSION:
            raise ModelFormatError(f"report version {data.get('version')!r} != {MODEL_VERSION}")
        try:
            return cls(
                kind=data["kind"],
                task=str(data["task"]),
                title=str(data["title"]),
                rows=tuple(EvalReport.from_json(r) for r in data["rows"]),
                baseline=MetricSet.from_json(data["baseline"]),
                provenance=dict(data.get("provenance", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"malformed report document: {exc}") from exc


def sort_tables(tables: Sequence[ResultTable]) -> list[ResultTable]:
    """Order factuality, bias7, bias3, and within a task results before ablation."""
    kind_rank = {"results": 0, "ablation": 1}

    def key(t: ResultTable) -> tuple[int, int]:
        task_rank = TASK_ORDER.index(t.task) if t.task in TASK_ORDER else len(TASK_ORDER)
        return (task_rank, kind_rank.get(t.kind, 2))

    return sorted(tables, key=key)


def render_tables(tables: Sequence[ResultTable], formatter: DisplayFormatter | None = None) -> str:
    """Markdown for several tables in ``sort_tables`` order."""
    return "\n\n".join(t.to_markdown(formatter) for t in sort_tables(tables))
