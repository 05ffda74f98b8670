"""
Pipeline steps behind the ``mediaprofile`` subcommands.

Each step takes a resolved ``PipelineConfig``, does its work, writes its
artifacts under ``output_dir`` and returns the paths it wrote. Click handling
stays in ``cli.main``.

Output layout::

    <output_dir>/skipped.txt               media without a bundle (extract)
    <output_dir>/reports/<kind>-<task>.json / .md
    <output_dir>/models/<task>.json        one-vs-one model per task (train)
    <output_dir>/models/manifest.json      feature manifest the models were trained on
    <output_dir>/report.md                 consolidated tables (report)
"""

from __future__ import annotations

import dataclasses
import json
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Final

import numpy as np

from mstair.mediaprofile.base.config import PipelineConfig
from mstair.mediaprofile.base.errors import DataError, ModelFormatError, StaleCacheError, UsageError
from mstair.mediaprofile.base.fs_helpers import StrPath, fs_atomic_write_text, fs_sha256_file
from mstair.mediaprofile.cli.cache import CachedFeatures, FeatureCache, row_key
from mstair.mediaprofile.corpus.labels import decode_label
from mstair.mediaprofile.corpus.loaders import bundle_path, load_bundles, load_corpus
from mstair.mediaprofile.corpus.records import EvidenceBundle, MediumRecord
from mstair.mediaprofile.corpus.stats import CorpusStats, corpus_stats
from mstair.mediaprofile.embedlex.embeddings import load_embeddings, read_embedding_header
from mstair.mediaprofile.embedlex.resources import load_resources, resource_fingerprint
from mstair.mediaprofile.evaluation.ablation import ablate
from mstair.mediaprofile.evaluation.protocol import (
    EvalSettings,
    per_feature_subsets,
    run_family_table,
)
from mstair.mediaprofile.evaluation.tables import ResultTable, render_tables, sort_tables
from mstair.mediaprofile.features.featurizer import FeatureMatrix, MediumFeaturizer
from mstair.mediaprofile.features.manifest import FeatureManifest, build_manifest
from mstair.mediaprofile.features.url_features import UrlNgramVectorizer
from mstair.mediaprofile.io.display_formatter import DisplayFormatter
from mstair.mediaprofile.svm.grid_search import grid_search
from mstair.mediaprofile.svm.multiclass import load_model, ovo_train, predict_many, save_model
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = [
    "REPORT_FILENAME",
    "SKIPPED_FILENAME",
    "ablate_tasks",
    "evaluate_tasks",
    "expected_manifest_digest",
    "extract_features",
    "load_cached_features",
    "predict_cached",
    "stats_for_corpus",
    "train_models",
    "write_report",
]

_LOG = create_logger(__name__)

SKIPPED_FILENAME: Final = "skipped.txt"
REPORT_FILENAME: Final = "report.md"
_REPORTS_DIR: Final = "reports"
_MODELS_DIR: Final = "models"


def _require_file(path: Path | None, what: str) -> Path:
    if path is None or not path.is_file():
        raise DataError(f"{what} not found: {path}")
    return path


# ---------- extract ----------


def _build_featurizer(cfg: PipelineConfig, records: Sequence[MediumRecord]) -> MediumFeaturizer:
    embeddings = _require_file(cfg.embeddings, "embedding file")
    resources = load_resources(cfg.resource_dir)
    table = load_embeddings(embeddings)
    ngrams = None
    if cfg.enable_url_ngrams:
        ngrams = UrlNgramVectorizer(cfg.ngram_range).fit(r.url for r in records)
        _LOG.debug("url n-gram vocabulary: %d grams", len(ngrams.vocabulary))
    return MediumFeaturizer(
        resources, table, ngrams=ngrams, embedding_fingerprint=fs_sha256_file(embeddings)
    )


def extract_features(cfg: PipelineConfig) -> CachedFeatures:
    """
    Featurize every medium that has a bundle and store the matrix in the cache.

    Rows already cached under the same bundle and manifest are reused. Media
    without a bundle are skipped with a warning and listed in ``skipped.txt``.

    :raises UsageError: corpus, bundle root or embeddings are not configured.
    :raises DataError: an input file is missing or malformed.
    """
    cfg.require("corpus", "bundle_root", "embeddings")
    assert cfg.corpus is not None and cfg.bundle_root is not None
    records = load_corpus(_require_file(cfg.corpus, "corpus file"))
    bundles, skipped = load_bundles(cfg.bundle_root, records)
    fs_atomic_write_text(cfg.output_dir / SKIPPED_FILENAME, "".join(f"{mid}\n" for mid in skipped))
    featurizer = _build_featurizer(cfg, records)
    featurizer.log_dimensions()
    manifest = featurizer.manifest
    digest = manifest.digest()
    kept = tuple(r for r in records if r.medium_id in bundles)
    bundle_root = cfg.bundle_root

    with FeatureCache(cfg.cache_dir) as cache:

        def compute(record: MediumRecord) -> np.ndarray:
            bundle: EvidenceBundle = bundles[record.medium_id]
            bundle_hash = fs_sha256_file(bundle_path(bundle_root, record.medium_id))
            key = row_key(record.medium_id, record.url, bundle_hash, digest)
            cached = cache.get_row(key, manifest.dim)
            if cached is not None:
                return cached
            with _LOG.prefix_with(f"[{record.medium_id}]"):
                row = featurizer.featurize(record, bundle)
            cache.put_row(key, row)
            return row

        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                computed = list(pool.map(compute, kept))
        else:
            computed = [compute(r) for r in kept]

        rows = np.vstack(computed) if computed else np.zeros((0, manifest.dim))
        matrix = FeatureMatrix(tuple(r.medium_id for r in kept), rows, manifest, tuple(skipped))
        features = CachedFeatures(matrix, kept)
        cache.save_features(features)
        cache.log_stats()

    _LOG.info(
        "extracted %d row(s) of dim %d, %d skipped, manifest %s",
        len(kept),
        manifest.dim,
        len(skipped),
        digest[:12],
    )
    return features


# ---------- cached features ----------


def expected_manifest_digest(cfg: PipelineConfig, stored: FeatureManifest) -> str:
    """
    Digest the manifest would have if extraction ran now with ``cfg``.

    Without a configured embedding file the stored embedding fingerprint is trusted.
    """
    if cfg.embeddings is not None:
        embeddings = _require_file(cfg.embeddings, "embedding file")
        dim = read_embedding_header(embeddings)[1]
        embedding_fp = fs_sha256_file(embeddings)
    else:
        dim, embedding_fp = stored.embedding_dim, stored.embedding_fingerprint
    enabled = cfg.enable_url_ngrams
    return build_manifest(
        dim,
        ngram_vocabulary=stored.ngram_vocabulary if enabled else None,
        ngram_range=cfg.ngram_range if enabled else None,
        resource_fingerprint=resource_fingerprint(cfg.resource_dir),
        embedding_fingerprint=embedding_fp,
    ).digest()


def load_cached_features(cfg: PipelineConfig) -> CachedFeatures:
    """
    The extracted matrix, checked against the current resources and embeddings.

    :raises UsageError: nothing has been extracted yet.
    :raises StaleCacheError: lexicons, embeddings or feature settings changed since extraction.
    """
    with FeatureCache(cfg.cache_dir) as cache:
        features = cache.load_features()
    expected = expected_manifest_digest(cfg, features.matrix.manifest)
    if expected != features.manifest_hash:
        raise StaleCacheError(expected, features.manifest_hash)
    if len(features.matrix) == 0:
        raise DataError("the feature cache holds no rows; every medium was skipped")
    return features


# ---------- evaluate / ablate ----------


def _with_config(table: ResultTable, cfg: PipelineConfig) -> ResultTable:
    return dataclasses.replace(table, provenance={**table.provenance, "config": cfg.to_json()})


def _write_table(cfg: PipelineConfig, table: ResultTable, formatter: DisplayFormatter) -> list[Path]:
    stem = cfg.output_dir / _REPORTS_DIR / f"{table.kind}-{table.task}"
    json_path = fs_atomic_write_text(
        stem.with_suffix(".json"), formatter.to_json(table.to_json()) + "\n"
    )
    md_path = fs_atomic_write_text(stem.with_suffix(".md"), table.to_markdown(formatter) + "\n")
    return [json_path, md_path]


def evaluate_tasks(
    cfg: PipelineConfig,
    subsets: Sequence[str] = (),
    *,
    per_feature: bool = False,
    features: CachedFeatures | None = None,
) -> list[Path]:
    """
    One results table per configured task.

    :param subsets: feature selectors, one table row each; by default a single
        row over the configured families.
    :param per_feature: lead with one row per feature and one per whole family,
        before any ``subsets``.
    """
    features = features or load_cached_features(cfg)
    settings = EvalSettings.from_config(cfg)
    rows: list[str | list[str]] = []
    if per_feature:
        rows += per_feature_subsets(features.matrix)
    rows += list(subsets)
    if not rows:
        rows.append(list(cfg.families))
    formatter = DisplayFormatter()
    written: list[Path] = []
    for task in cfg.tasks:
        table = run_family_table(features.matrix, features.labels(task), task, rows, settings)
        written += _write_table(cfg, _with_config(table, cfg), formatter)
    return written


def ablate_tasks(cfg: PipelineConfig, *, features: CachedFeatures | None = None) -> list[Path]:
    """One six-row ablation table per configured task."""
    features = features or load_cached_features(cfg)
    settings = EvalSettings.from_config(cfg)
    formatter = DisplayFormatter()
    written: list[Path] = []
    for task in cfg.tasks:
        table = ablate(features.matrix, features.labels(task), task, settings)
        written += _write_table(cfg, _with_config(table, cfg), formatter)
    return written


# ---------- train / predict ----------


def train_models(cfg: PipelineConfig, *, features: CachedFeatures | None = None) -> list[Path]:
    """
    Grid-search on every cached row, fit the final model per task and save it
    with the feature manifest.
    """
    features = features or load_cached_features(cfg)
    settings = EvalSettings.from_config(cfg)
    selectors = tuple(cfg.families)
    X = features.matrix.columns(selectors)
    models_dir = cfg.output_dir / _MODELS_DIR
    written: list[Path] = []
    for task in cfg.tasks:
        y = features.labels(task)
        with _LOG.prefix_with(f"[train {task}]"):
            gs = grid_search(
                X,
                y,
                settings.grid,
                settings.k_inner,
                settings.seed,
                tol=settings.tol,
                workers=settings.workers,
            )
            _LOG.info("chosen %s", gs.best.label())
            model = ovo_train(
                X,
                y,
                gs.best,
                tol=settings.tol,
                manifest_hash=features.manifest_hash,
                selectors=selectors,
                workers=settings.workers,
            )
        written.append(save_model(models_dir / f"{task}.json", model))
    manifest_text = DisplayFormatter().to_json(features.matrix.manifest.to_json()) + "\n"
    written.append(fs_atomic_write_text(models_dir / "manifest.json", manifest_text))
    return written


def predict_cached(cfg: PipelineConfig, model_path: StrPath, task: str) -> list[tuple[str, str]]:
    """
    Score every cached row with a saved model.

    :return: ``(medium_id, label)`` pairs in cache order.
    :raises StaleCacheError: the model was trained on a different feature manifest.
    """
    features = load_cached_features(cfg)
    model = load_model(model_path)
    if model.manifest_hash and model.manifest_hash != features.manifest_hash:
        raise StaleCacheError(model.manifest_hash, features.manifest_hash)
    selectors = model.selectors or features.matrix.manifest.families
    predicted = predict_many(model, features.matrix.columns(selectors))
    return [
        (mid, decode_label(task, int(c)))
        for mid, c in zip(features.matrix.medium_ids, predicted, strict=True)
    ]


# ---------- stats / report ----------


def stats_for_corpus(cfg: PipelineConfig) -> CorpusStats:
    """Label distribution, plus evidence coverage when a bundle root is configured."""
    cfg.require("corpus")
    records = load_corpus(_require_file(cfg.corpus, "corpus file"))
    bundles: dict[str, EvidenceBundle] = {}
    if cfg.bundle_root is not None:
        bundles, _ = load_bundles(cfg.bundle_root, records)
    return corpus_stats(records, bundles)


def _load_table(path: Path) -> ResultTable:
    try:
        data: Any = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}", path=path) from exc
    if not isinstance(data, dict):
        raise ModelFormatError("expected a JSON object", path=path)
    try:
        return ResultTable.from_json(data)
    except ModelFormatError as exc:
        raise ModelFormatError(str(exc), path=path) from exc


def _provenance_rows(tables: Sequence[ResultTable]) -> list[dict[str, Any]]:
    return [
        {
            "Task": t.task,
            "Table": t.kind,
            "Seed": t.provenance.get("seed"),
            "Manifest": str(t.provenance.get("manifest_hash", ""))[:12],
        }
        for t in tables
    ]


def write_report(output_dir: StrPath) -> Path:
    """
    Consolidate every saved table under ``output_dir`` into ``report.md``.

    :raises UsageError: no saved tables.
    :raises ModelFormatError: a saved table is unreadable; the message names the file.
    """
    out = Path(output_dir)
    paths = sorted((out / _REPORTS_DIR).glob("*.json"))
    if not paths:
        raise UsageError(f"no reports under {out / _REPORTS_DIR}; run evaluate or ablate first")
    tables = sort_tables([_load_table(p) for p in paths])
    formatter = DisplayFormatter()
    parts = [
        "# Media profiling results",
        "",
        render_tables(tables, formatter),
        "",
        "## Provenance",
        "",
        formatter.to_markdown(_provenance_rows(tables), ["Task", "Table", "Seed", "Manifest"]),
    ]
    configs = {formatter.to_json(t.provenance["config"]) for t in tables if "config" in t.provenance}
    for text in sorted(configs):
        parts += ["", "```json", text, "```"]
    path = fs_atomic_write_text(out / REPORT_FILENAME, "\n".join(parts) + "\n")
    _LOG.info("wrote %s from %d table(s)", path, len(tables))
    return path
