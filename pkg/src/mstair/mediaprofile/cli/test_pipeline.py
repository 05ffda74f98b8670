"""
Integration tests of the pipeline steps on a small synthetic corpus.
"""

from __future__ import annotations

import json
import logging
import shutil
from pathlib import Path
from typing import Any

import pytest

from mstair.mediaprofile.base.config import PipelineConfig, load_config
from mstair.mediaprofile.base.errors import DataError, ModelFormatError, StaleCacheError, UsageError
from mstair.mediaprofile.cli import pipeline
from mstair.mediaprofile.corpus.labels import FACTUALITY_LABELS
from mstair.mediaprofile.corpus.synthetic import SyntheticCorpus, build_synthetic_corpus
from mstair.mediaprofile.evaluation.protocol import PER_FEATURE_SUBSETS, per_feature_subsets


pytestmark = pytest.mark.integration

_N_MEDIA = 14
_DIM = 12
# traffic 1, url 12, twitter 11 + d, wikipedia 1 + 5d, articles 102
_ROW_DIM = 1 + 12 + (11 + _DIM) + (1 + 5 * _DIM) + 102


@pytest.fixture
def synth(tmp_path: Path) -> SyntheticCorpus:
    return build_synthetic_corpus(tmp_path / "data", n_media=_N_MEDIA, seed=1, dim=_DIM)


def _config(synth: SyntheticCorpus, tmp_path: Path, **overrides: Any) -> PipelineConfig:
    values: dict[str, Any] = {
        "corpus": synth.corpus,
        "bundle_root": synth.bundle_root,
        "embeddings": synth.embeddings,
        "cache_dir": tmp_path / "cache",
        "output_dir": tmp_path / "out",
        "grid": [{"kind": "linear", "C": 1.0}],
        "k_outer": 2,
        "k_inner": 2,
    }
    values.update(overrides)
    return load_config(None, environ={}, overrides=values)


# ---------- extract ----------


class TestExtract:
    def test_rows_and_dimensions(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path)
        features = pipeline.extract_features(cfg)
        assert len(features.matrix) == _N_MEDIA
        assert features.matrix.rows.shape == (_N_MEDIA, _ROW_DIM)
        assert features.matrix.manifest.family_dims()["wikipedia"] == 1 + 5 * _DIM
        assert (cfg.output_dir / pipeline.SKIPPED_FILENAME).read_text(encoding="utf-8") == ""

    def test_rerun_is_served_from_cache(
        self, synth: SyntheticCorpus, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        cfg = _config(synth, tmp_path)
        first = pipeline.extract_features(cfg)
        with caplog.at_level(logging.INFO):
            second = pipeline.extract_features(cfg)
        assert f"{_N_MEDIA} hit(s), 0 miss(es)" in caplog.text
        assert second.manifest_hash == first.manifest_hash
        assert (second.matrix.rows == first.matrix.rows).all()

    def test_changed_bundle_is_recomputed(
        self, synth: SyntheticCorpus, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        cfg = _config(synth, tmp_path)
        pipeline.extract_features(cfg)
        victim = synth.bundle_root / synth.records[0].medium_id / "bundle.json"
        data = json.loads(victim.read_text(encoding="utf-8"))
        data["alexa_rank"] = 7
        victim.write_text(json.dumps(data), encoding="utf-8")
        with caplog.at_level(logging.INFO):
            pipeline.extract_features(cfg)
        assert f"{_N_MEDIA - 1} hit(s), 1 miss(es)" in caplog.text

    def test_missing_bundle_is_skipped(
        self, synth: SyntheticCorpus, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        gone = synth.records[2].medium_id
        shutil.rmtree(synth.bundle_root / gone)
        cfg = _config(synth, tmp_path)
        with caplog.at_level(logging.WARNING):
            features = pipeline.extract_features(cfg)
        assert len(features.matrix) == _N_MEDIA - 1
        assert gone not in features.matrix.medium_ids
        assert features.matrix.skipped == (gone,)
        assert (cfg.output_dir / "skipped.txt").read_text(encoding="utf-8") == f"{gone}\n"
        assert f"skipping {gone}" in caplog.text

    def test_missing_embeddings_is_data_error(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path, embeddings=tmp_path / "nope.txt")
        with pytest.raises(DataError, match="embedding file"):
            pipeline.extract_features(cfg)

    def test_unset_corpus_is_usage_error(self, tmp_path: Path) -> None:
        cfg = load_config(None, environ={}, overrides={"cache_dir": tmp_path})
        with pytest.raises(UsageError, match="--corpus"):
            pipeline.extract_features(cfg)

    def test_url_ngrams_widen_the_url_family(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path, enable_url_ngrams=True, ngram_range=[2, 2])
        features = pipeline.extract_features(cfg)
        manifest = features.matrix.manifest
        assert manifest.family_dims()["url"] == 12 + len(manifest.ngram_vocabulary)
        assert len(manifest.ngram_vocabulary) > 0


# ---------- cached features ----------


class TestStaleness:
    def test_changed_embeddings_are_stale(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path)
        pipeline.extract_features(cfg)
        with synth.embeddings.open("a", encoding="utf-8") as fh:
            fh.write("\n")
        with pytest.raises(StaleCacheError, match="extract"):
            pipeline.load_cached_features(cfg)

    def test_toggling_ngrams_is_stale(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        pipeline.extract_features(_config(synth, tmp_path))
        with pytest.raises(StaleCacheError):
            pipeline.load_cached_features(_config(synth, tmp_path, enable_url_ngrams=True))

    def test_unchanged_inputs_load(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path)
        extracted = pipeline.extract_features(cfg)
        assert pipeline.load_cached_features(cfg).manifest_hash == extracted.manifest_hash

    def test_nothing_extracted(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        with pytest.raises(UsageError, match="extract"):
            pipeline.load_cached_features(_config(synth, tmp_path))


# ---------- evaluate / ablate / report ----------


class TestTables:
    def test_evaluate_writes_json_and_markdown(
        self, synth: SyntheticCorpus, tmp_path: Path
    ) -> None:
        cfg = _config(synth, tmp_path, tasks="factuality")
        pipeline.extract_features(cfg)
        written = pipeline.evaluate_tasks(cfg)
        names = sorted(p.name for p in written)
        assert names == ["results-factuality.json", "results-factuality.md"]
        doc = json.loads((cfg.output_dir / "reports" / "results-factuality.json").read_text())
        assert doc["task"] == "factuality"
        assert len(doc["rows"]) == 1
        assert doc["provenance"]["config"]["seed"] == 0
        assert doc["provenance"]["manifest_hash"] == doc["rows"][0]["manifest_hash"]

    def test_reports_are_byte_identical_across_runs(
        self, synth: SyntheticCorpus, tmp_path: Path
    ) -> None:
        cfg = _config(synth, tmp_path, tasks="bias3")
        pipeline.extract_features(cfg)
        path = cfg.output_dir / "reports" / "results-bias3.json"
        pipeline.evaluate_tasks(cfg)
        first = path.read_bytes()
        pipeline.evaluate_tasks(cfg)
        assert path.read_bytes() == first

    def test_subsets_give_one_row_each(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path, tasks="factuality")
        pipeline.extract_features(cfg)
        pipeline.evaluate_tasks(cfg, ["traffic", "wikipedia:*", "twitter:counts+url"])
        doc = json.loads((cfg.output_dir / "reports" / "results-factuality.json").read_text())
        assert [r["n_features"] for r in doc["rows"]] == [1, 1 + 5 * _DIM, 5 + 12]

    def test_per_feature_rows_follow_source_order(
        self, synth: SyntheticCorpus, tmp_path: Path
    ) -> None:
        cfg = _config(synth, tmp_path, tasks="factuality")
        pipeline.extract_features(cfg)
        pipeline.evaluate_tasks(cfg, ["traffic+url"], per_feature=True)
        doc = json.loads((cfg.output_dir / "reports" / "results-factuality.json").read_text())
        labels = [r["label"] for r in doc["rows"]]
        assert labels == [*PER_FEATURE_SUBSETS, "traffic+url"]
        dims = dict(zip(labels, (r["n_features"] for r in doc["rows"]), strict=True))
        assert dims["traffic:rank"] == 1
        assert dims["url:structure"] == 12
        assert dims["twitter:url_match"] == 2
        assert dims["twitter:counts"] == 5
        assert dims["twitter:description"] == _DIM
        assert dims["twitter:*"] == 11 + _DIM
        assert dims["wikipedia:toc"] == _DIM
        assert dims["wikipedia:*"] == 1 + 5 * _DIM
        assert dims["articles:title"] == dims["articles:body"] == 51
        assert dims["traffic+url"] == 13

    def test_per_feature_rows_include_url_ngrams(
        self, synth: SyntheticCorpus, tmp_path: Path
    ) -> None:
        cfg = _config(synth, tmp_path, enable_url_ngrams=True, ngram_range=[2, 2])
        features = pipeline.extract_features(cfg)
        subsets = per_feature_subsets(features.matrix)
        assert subsets[1:3] == ["url:structure", "url:ngrams"]
        assert len(subsets) == len(PER_FEATURE_SUBSETS) + 1

    def test_ablation_has_six_rows(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path, tasks="factuality")
        pipeline.extract_features(cfg)
        pipeline.ablate_tasks(cfg)
        doc = json.loads((cfg.output_dir / "reports" / "ablation-factuality.json").read_text())
        assert len(doc["rows"]) == 6
        assert doc["rows"][1]["n_features"] == _ROW_DIM - 1

    def test_report_orders_sections(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path, tasks="bias3,factuality")
        pipeline.extract_features(cfg)
        pipeline.evaluate_tasks(cfg)
        path = pipeline.write_report(cfg.output_dir)
        text = path.read_text(encoding="utf-8")
        assert text.index("### Results for factuality") < text.index("### Results for bias3")
        assert "## Provenance" in text
        assert "Majority Baseline" in text

    def test_report_without_tables(self, tmp_path: Path) -> None:
        with pytest.raises(UsageError, match="no reports"):
            pipeline.write_report(tmp_path)

    def test_corrupt_report_names_the_file(self, tmp_path: Path) -> None:
        bad = tmp_path / "reports" / "results-factuality.json"
        bad.parent.mkdir(parents=True)
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(ModelFormatError, match="results-factuality.json"):
            pipeline.write_report(tmp_path)


# ---------- train / predict / stats ----------


class TestTrainPredict:
    def test_train_then_predict(self, synth: SyntheticCorpus, tmp_path: Path) -> None:
        cfg = _config(synth, tmp_path, tasks="factuality")
        pipeline.extract_features(cfg)
        written = pipeline.train_models(cfg)
        assert sorted(p.name for p in written) == ["factuality.json", "manifest.json"]
        model_path = cfg.output_dir / "models" / "factuality.json"
        labels = pipeline.predict_cached(cfg, model_path, "factuality")
        assert [mid for mid, _ in labels] == [r.medium_id for r in synth.records]
        assert {label for _, label in labels} <= set(FACTUALITY_LABELS)

    def test_model_from_other_manifest_is_stale(
        self, synth: SyntheticCorpus, tmp_path: Path
    ) -> None:
        cfg = _config(synth, tmp_path, tasks="factuality")
        pipeline.extract_features(cfg)
        pipeline.train_models(cfg)
        model_path = cfg.output_dir / "models" / "factuality.json"
        doc = json.loads(model_path.read_text(encoding="utf-8"))
        doc["manifest_hash"] = "f" * 64
        model_path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(StaleCacheError):
            pipeline.predict_cached(cfg, model_path, "factuality")


def test_stats_reports_coverage(synth: SyntheticCorpus, tmp_path: Path) -> None:
    stats = pipeline.stats_for_corpus(_config(synth, tmp_path))
    assert stats.n_media == _N_MEDIA
    assert stats.n_bundles == _N_MEDIA
    assert stats.with_wikipedia == _N_MEDIA
    assert sum(stats.bias7_counts) == _N_MEDIA
