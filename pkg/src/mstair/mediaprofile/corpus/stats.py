"""Label distribution and evidence coverage of a corpus."""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from mstair.mediaprofile.corpus.labels import (
    BIAS3_LABELS,
    BIAS7_LABELS,
    FACTUALITY_LABELS,
    map_bias_7_to_3,
)
from mstair.mediaprofile.corpus.records import EvidenceBundle, MediumRecord


__all__ = ["CorpusStats", "corpus_stats"]


@dataclass(frozen=True, slots=True)
class CorpusStats:
    n_media: int
    factuality_counts: tuple[int, ...]
    bias7_counts: tuple[int, ...]
    bias3_counts: tuple[int, ...]
    n_bundles: int = 0
    with_wikipedia: int = 0
    with_twitter: int = 0
    with_traffic: int = 0
    total_articles: int = 0

    def share(self, count: int) -> float:
        """Fraction of loaded bundles; 0.0 when nothing was loaded."""
        return count / self.n_bundles if self.n_bundles else 0.0

    @property
    def mean_articles(self) -> float:
        return self.total_articles / self.n_bundles if self.n_bundles else 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "n_media": self.n_media,
            "factuality": dict(zip(FACTUALITY_LABELS, self.factuality_counts, strict=True)),
            "bias7": dict(zip(BIAS7_LABELS, self.bias7_counts, strict=True)),
            "bias3": dict(zip(BIAS3_LABELS, self.bias3_counts, strict=True)),
            "coverage": {
                "bundles": self.n_bundles,
                "wikipedia": round(self.share(self.with_wikipedia), 4),
                "twitter": round(self.share(self.with_twitter), 4),
                "traffic": round(self.share(self.with_traffic), 4),
                "mean_articles": round(self.mean_articles, 2),
            },
        }


def _counts(values: Sequence[int], k: int) -> tuple[int, ...]:
    c = Counter(values)
    return tuple(c.get(i, 0) for i in range(k))


def corpus_stats(
    records: Sequence[MediumRecord],
    bundles: Mapping[str, EvidenceBundle] | None = None,
) -> CorpusStats:
    """Count labels per scale and, when bundles are given, how much evidence they carry."""
    bundles = bundles or {}
    loaded = [bundles[r.medium_id] for r in records if r.medium_id in bundles]
    return CorpusStats(
        n_media=len(records),
        factuality_counts=_counts([r.factuality for r in records], len(FACTUALITY_LABELS)),
        bias7_counts=_counts([r.bias7 for r in records], len(BIAS7_LABELS)),
        bias3_counts=_counts([map_bias_7_to_3(r.bias7) for r in records], len(BIAS3_LABELS)),
        n_bundles=len(loaded),
        with_wikipedia=sum(b.wiki.exists for b in loaded),
        with_twitter=sum(b.twitter.exists for b in loaded),
        with_traffic=sum(b.alexa_rank is not None for b in loaded),
        total_articles=sum(len(b.articles) for b in loaded),
    )
