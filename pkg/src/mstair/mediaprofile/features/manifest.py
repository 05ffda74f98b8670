"""
Family manifest: which column ranges of a medium's feature vector belong to
which family and feature.

Family order is traffic, url, twitter, wikipedia, articles. Selectors name
columns for evaluation runs:

- ``twitter`` or ``twitter:*``: every column of the family
- ``twitter:counts``: one feature span
- ``traffic+url``: the union of several selectors
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from mstair.mediaprofile.base.constants import MANIFEST_VERSION
from mstair.mediaprofile.base.errors import UnknownFamilyError
from mstair.mediaprofile.corpus.records import COUNT_FIELDS
from mstair.mediaprofile.features.article_features import ARTICLE_DIM, article_manifest_json
from mstair.mediaprofile.features.profile_features import WIKI_SEGMENTS
from mstair.mediaprofile.features.url_features import URL_FEATURE_NAMES


__all__ = ["FAMILY_ORDER", "FeatureManifest", "FeatureSpan", "build_manifest"]

FAMILY_ORDER: tuple[str, ...] = ("traffic", "url", "twitter", "wikipedia", "articles")


@dataclass(frozen=True, slots=True)
class FeatureSpan:
    family: str
    feature: str
    start: int
    stop: int

    @property
    def width(self) -> int:
        return self.stop - self.start

    @property
    def selector(self) -> str:
        return f"{self.family}:{self.feature}"


@dataclass(frozen=True, slots=True)
class FeatureManifest:
    spans: tuple[FeatureSpan, ...]
    embedding_dim: int
    ngram_vocabulary: tuple[str, ...] = ()
    ngram_range: tuple[int, int] | None = None
    resource_fingerprint: str = ""
    embedding_fingerprint: str = ""
    _by_selector: dict[str, FeatureSpan] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pos = 0
        for span in self.spans:
            if span.start != pos or span.stop < span.start:
                raise ValueError(f"span {span.selector} breaks contiguity at column {pos}")
            pos = span.stop
        object.__setattr__(self, "_by_selector", {s.selector: s for s in self.spans})

    @property
    def dim(self) -> int:
        return self.spans[-1].stop if self.spans else 0

    @property
    def families(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(s.family for s in self.spans))

    def family_dims(self) -> dict[str, int]:
        dims: dict[str, int] = {}
        for span in self.spans:
            dims[span.family] = dims.get(span.family, 0) + span.width
        return dims

    def valid_selectors(self) -> list[str]:
        return [*self.families, *self._by_selector]

    def _resolve(self, selector: str) -> list[FeatureSpan]:
        family, _, feature = selector.strip().partition(":")
        if family in self.families and feature in ("", "*"):
            return [s for s in self.spans if s.family == family]
        span = self._by_selector.get(f"{family}:{feature}")
        if span is None:
            raise UnknownFamilyError(selector, self.valid_selectors())
        return [span]

    def select(self, selectors: str | Iterable[str]) -> np.ndarray:
        """
        Sorted column indices covered by the selectors.

        :raises UnknownFamilyError: an unknown name, or nothing selected at all.
        """
        items = [selectors] if isinstance(selectors, str) else list(selectors)
        parts = [p for item in items for p in item.split("+") if p.strip()]
        if not parts:
            raise UnknownFamilyError("", self.valid_selectors())
        chosen: dict[str, FeatureSpan] = {}
        for part in parts:
            for span in self._resolve(part):
                chosen[span.selector] = span
        ordered = sorted(chosen.values(), key=lambda s: s.start)
        ranges = [np.arange(s.start, s.stop) for s in ordered]
        return np.concatenate(ranges) if ranges else np.zeros(0, dtype=np.intp)

    def without(self, family: str) -> list[str]:
        """Family selectors for every family except ``family``."""
        if family not in self.families:
            raise UnknownFamilyError(family, self.valid_selectors())
        return [f for f in self.families if f != family]

    def to_json(self) -> dict[str, Any]:
        return {
            "version": MANIFEST_VERSION,
            "embedding_dim": self.embedding_dim,
            "spans": [
                {"family": s.family, "feature": s.feature, "start": s.start, "stop": s.stop}
                for s in self.spans
            ],
            "articles": article_manifest_json(),
            "ngram_range": list(self.ngram_range) if self.ngram_range else None,
            "ngram_vocabulary": list(self.ngram_vocabulary),
            "resource_fingerprint": self.resource_fingerprint,
            "embedding_fingerprint": self.embedding_fingerprint,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> FeatureManifest:
        if str(data.get("version")) != MANIFEST_VERSION:
            raise ValueError(
                f"feature manifest version {data.get('version')!r} != {MANIFEST_VERSION}"
            )
        ngram_range = data.get("ngram_range")
        return cls(
            spans=tuple(
                FeatureSpan(str(s["family"]), str(s["feature"]), int(s["start"]), int(s["stop"]))
                for s in data["spans"]
            ),
            embedding_dim=int(data["embedding_dim"]),
            ngram_vocabulary=tuple(data.get("ngram_vocabulary", ())),
            ngram_range=(int(ngram_range[0]), int(ngram_range[1])) if ngram_range else None,
            resource_fingerprint=str(data.get("resource_fingerprint", "")),
            embedding_fingerprint=str(data.get("embedding_fingerprint", "")),
        )

    def digest(self) -> str:
        """SHA-256 of the canonical JSON; changes with any definition, resource or embedding."""
        text = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_manifest(
    embedding_dim: int,
    *,
    ngram_vocabulary: Sequence[str] | None = None,
    ngram_range: tuple[int, int] | None = None,
    resource_fingerprint: str = "",
    embedding_fingerprint: str = "",
) -> FeatureManifest:
    """
    Lay out every family for embeddings of ``embedding_dim``.

    ``url:ngrams`` is present only when ``ngram_vocabulary`` is given.
    """
    d = embedding_dim
    widths: list[tuple[str, str, int]] = [
        ("traffic", "rank", 1),
        ("url", "structure", len(URL_FEATURE_NAMES)),
    ]
    if ngram_vocabulary is not None:
        widths.append(("url", "ngrams", len(ngram_vocabulary)))
    widths += [
        ("twitter", "has_account", 1),
        ("twitter", "verified", 1),
        ("twitter", "created", 1),
        ("twitter", "has_location", 1),
        ("twitter", "url_match", 2),
        ("twitter", "counts", len(COUNT_FIELDS)),
        ("twitter", "description", d),
        ("wikipedia", "has_page", 1),
        *(("wikipedia", segment, d) for segment in WIKI_SEGMENTS),
        ("articles", "title", ARTICLE_DIM),
        ("articles", "body", ARTICLE_DIM),
    ]
    spans: list[FeatureSpan] = []
    pos = 0
    for family, feature, width in widths:
        spans.append(FeatureSpan(family, feature, pos, pos + width))
        pos += width
    return FeatureManifest(
        spans=tuple(spans),
        embedding_dim=d,
        ngram_vocabulary=tuple(ngram_vocabulary or ()),
        ngram_range=ngram_range if ngram_vocabulary is not None else None,
        resource_fingerprint=resource_fingerprint,
        embedding_fingerprint=embedding_fingerprint,
    )
