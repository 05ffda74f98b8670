"""
Tests for the family ablation harness.
"""

from __future__ import annotations

import numpy as np
import pytest

from mstair.mediaprofile.evaluation.ablation import ABLATION_ORDER, ablate
from mstair.mediaprofile.evaluation.protocol import EvalSettings
from mstair.mediaprofile.evaluation.tables import ResultTable
from mstair.mediaprofile.features.featurizer import FeatureMatrix
from mstair.mediaprofile.features.manifest import build_manifest
from mstair.mediaprofile.svm.kernels import KernelParams


@pytest.fixture(scope="module")
def table() -> ResultTable:
    """Wikipedia columns carry the label; traffic and url carry noise."""
    rng = np.random.default_rng(0)
    y = np.repeat(np.arange(3), 10)
    manifest = build_manifest(1)
    rows = np.zeros((30, manifest.dim))
    rows[:, manifest.select("traffic+url")] = rng.normal(size=(30, 13))
    wiki = manifest.select("wikipedia")
    rows[np.arange(30), wiki[0] + y] = 1.0
    features = FeatureMatrix(tuple(f"m{i}" for i in range(30)), rows, manifest)
    settings = EvalSettings(grid=(KernelParams("linear", 1.0),), k_outer=3, k_inner=2)
    return ablate(features, y, "factuality", settings)


class TestAblate:
    def test_six_rows_in_order(self, table: ResultTable) -> None:
        assert [r.label for r in table.rows] == [
            "Full",
            "Full w/o traffic",
            "Full w/o twitter",
            "Full w/o url",
            "Full w/o articles",
            "Full w/o wikipedia",
        ]
        assert len(ABLATION_ORDER) == 5

    def test_dimensions(self, table: ResultTable) -> None:
        dims = {r.label: r.n_features for r in table.rows}
        assert dims["Full"] == 133
        assert dims["Full w/o traffic"] == 132
        assert dims["Full w/o wikipedia"] == 127
        assert dims["Full w/o articles"] == 31

    def test_removing_planted_family_hurts(self, table: ResultTable) -> None:
        full = table.rows[0].pooled.macro_f1
        assert full >= 0.9
        no_wiki = next(r for r in table.rows if r.label == "Full w/o wikipedia")
        assert full - no_wiki.pooled.macro_f1 >= 0.05

    def test_deltas(self, table: ResultTable) -> None:
        deltas = table.deltas()
        assert deltas[0] == 0.0 and len(deltas) == 6
        assert min(deltas) == deltas[-1]
        assert table.to_json()["deltas"] == list(deltas)
