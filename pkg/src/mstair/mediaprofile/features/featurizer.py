"""
Medium-level feature rows: every family block concatenated in manifest order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from mstair.mediaprofile.corpus.records import EvidenceBundle, MediumRecord
from mstair.mediaprofile.embedlex.embeddings import EmbeddingTable
from mstair.mediaprofile.embedlex.resources import ResourceBundle
from mstair.mediaprofile.features.article_features import medium_article_block
from mstair.mediaprofile.features.manifest import FeatureManifest, build_manifest
from mstair.mediaprofile.features.profile_features import twitter_features, wiki_features
from mstair.mediaprofile.features.url_features import (
    UrlNgramVectorizer,
    traffic_feature,
    url_char_ngrams,
    url_structure_features,
)
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["FeatureMatrix", "MediumFeaturizer"]

_LOG = create_logger(__name__)


@dataclass(frozen=True, slots=True)
class FeatureMatrix:
    """Row-aligned feature rows for a list of media."""

    medium_ids: tuple[str, ...]
    rows: np.ndarray
    manifest: FeatureManifest
    skipped: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.rows.shape != (len(self.medium_ids), self.manifest.dim):
            raise ValueError(
                f"rows shape {self.rows.shape} != ({len(self.medium_ids)}, {self.manifest.dim})"
            )

    def __len__(self) -> int:
        return len(self.medium_ids)

    def columns(self, selectors: str | Iterable[str]) -> np.ndarray:
        return self.rows[:, self.manifest.select(selectors)]

    def restrict(self, medium_ids: Sequence[str]) -> FeatureMatrix:
        """Rows for ``medium_ids`` in that order; unknown ids raise KeyError."""
        pos = {mid: i for i, mid in enumerate(self.medium_ids)}
        idx = [pos[mid] for mid in medium_ids]
        return FeatureMatrix(tuple(medium_ids), self.rows[idx], self.manifest, self.skipped)


class MediumFeaturizer:
    """
    Turns one (record, bundle) pair into a feature row.

    Instances hold only immutable resources and are safe to share between threads.
    """

    def __init__(
        self,
        resources: ResourceBundle,
        table: EmbeddingTable,
        *,
        ngrams: UrlNgramVectorizer | None = None,
        embedding_fingerprint: str = "",
    ) -> None:
        self.resources = resources
        self.table = table
        self.ngrams = ngrams
        self.manifest = build_manifest(
            table.dim,
            ngram_vocabulary=ngrams.vocabulary if ngrams is not None else None,
            ngram_range=ngrams.n_range if ngrams is not None else None,
            resource_fingerprint=resources.fingerprint,
            embedding_fingerprint=embedding_fingerprint,
        )
        self._family_dims = self.manifest.family_dims()

    def family_blocks(self, record: MediumRecord, bundle: EvidenceBundle) -> dict[str, np.ndarray]:
        """
        One vector per family, in family order.

        :raises UrlExtractionError: the record's URL cannot be parsed.
        """
        url = url_structure_features(record.url, self.resources).to_vector()
        if self.ngrams is not None:
            url = np.concatenate([url, url_char_ngrams(record.url, self.ngrams)])
        blocks = {
            "traffic": traffic_feature(bundle.alexa_rank),
            "url": url,
            "twitter": twitter_features(bundle.twitter, record.url, self.table).to_vector(),
            "wikipedia": wiki_features(bundle.wiki, self.table).to_vector(),
            "articles": medium_article_block(bundle.articles, self.resources),
        }
        for family, block in blocks.items():
            expected = self._family_dims[family]
            if block.shape != (expected,):
                raise AssertionError(f"{family} block has shape {block.shape}, expected {expected}")
        return blocks

    def featurize(self, record: MediumRecord, bundle: EvidenceBundle) -> np.ndarray:
        row = np.concatenate(list(self.family_blocks(record, bundle).values()))
        if not np.isfinite(row).all():
            raise AssertionError(f"non-finite feature for {record.medium_id}")
        return row

    def log_dimensions(self) -> None:
        dims = self.manifest.family_dims()
        summary = ", ".join(f"{family}={width}" for family, width in dims.items())
        _LOG.info("feature dimensions: %s (total %d)", summary, self.manifest.dim)
