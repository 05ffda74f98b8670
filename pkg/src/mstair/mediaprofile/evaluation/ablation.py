"""
Family ablation: the full system, then the full system without each family.
"""

from __future__ import annotations

from typing import Final

import numpy as np

from mstair.mediaprofile.corpus.labels import num_classes
from mstair.mediaprofile.evaluation.metrics import majority_baseline
from mstair.mediaprofile.evaluation.protocol import EvalSettings, cross_validate
from mstair.mediaprofile.evaluation.tables import ResultTable
from mstair.mediaprofile.features.featurizer import FeatureMatrix
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["ABLATION_ORDER", "FULL_LABEL", "ablate"]

_LOG = create_logger(__name__)

ABLATION_ORDER: Final[tuple[str, ...]] = ("traffic", "twitter", "url", "articles", "wikipedia")
FULL_LABEL: Final = "Full"


def ablate(
    features: FeatureMatrix,
    labels: np.ndarray,
    task: str,
    settings: EvalSettings,
) -> ResultTable:
    """
    Six cross-validated rows: ``Full`` and ``Full w/o <family>`` for each family.

    For 3-way bias pass labels already folded from the 7-point scale.
    """
    manifest = features.manifest
    y = np.asarray(labels).astype(np.int64)
    rows = [cross_validate(features, y, task, settings, label=FULL_LABEL)]
    for family in ABLATION_ORDER:
        rows.append(
            cross_validate(
                features,
                y,
                task,
                settings,
                selectors=manifest.without(family),
                label=f"{FULL_LABEL} w/o {family}",
            )
        )
    _, baseline = majority_baseline(y, num_classes(task))
    table = ResultTable(
        kind="ablation",
        task=task,
        title=f"Ablation for {task}",
        rows=tuple(rows),
        baseline=baseline,
        provenance={"seed": settings.seed, "manifest_hash": manifest.digest()},
    )
    ranked = sorted(zip(ABLATION_ORDER, table.deltas()[1:], strict=True), key=lambda t: t[1])
    _LOG.info(
        "%s ablation macro-F1 change by removed family: %s",
        task,
        ", ".join(f"{family} {delta:+.2f}" for family, delta in ranked),
    )
    return table
