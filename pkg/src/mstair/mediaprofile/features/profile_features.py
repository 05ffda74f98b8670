"""
Wikipedia and Twitter profile features.

Wikipedia: a has-page flag and the mean embedding of each of five page
segments (``1 + 5 * dim``). Twitter: has-account, verified, creation year,
has-location, the URL-match pair, five log1p counts and the mean embedding of
the description (``11 + dim``). A missing page or account zeroes its block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final
from urllib.parse import urlsplit

import numpy as np

from mstair.mediaprofile.corpus.records import COUNT_FIELDS, TwitterProfile, WikiSnapshot
from mstair.mediaprofile.embedlex.embeddings import EmbeddingTable, avg_embedding
from mstair.mediaprofile.embedlex.tokenizer import tokenize


__all__ = [
    "TWITTER_SCALARS",
    "WIKI_SEGMENTS",
    "TwitterFeatureBlock",
    "WikiFeatureBlock",
    "normalize_host",
    "twitter_features",
    "url_match",
    "wiki_features",
]

WIKI_SEGMENTS: Final[tuple[str, ...]] = ("content", "infobox", "summary", "categories", "toc")
TWITTER_SCALARS: Final = 11
"""has_account, verified, created_year, has_location, has_url, url_matches and five counts."""


@dataclass(frozen=True, slots=True)
class WikiFeatureBlock:
    has_page: int
    segments: tuple[np.ndarray, ...]
    """One vector per entry of WIKI_SEGMENTS."""

    def to_vector(self) -> np.ndarray:
        return np.concatenate([[float(self.has_page)], *self.segments])

    @staticmethod
    def names(dim: int) -> list[str]:
        return ["has_page"] + [f"{seg}[{i}]" for seg in WIKI_SEGMENTS for i in range(dim)]

    @staticmethod
    def length(dim: int) -> int:
        return 1 + len(WIKI_SEGMENTS) * dim


@dataclass(frozen=True, slots=True)
class TwitterFeatureBlock:
    has_account: int
    verified: int
    created_year: int
    has_location: int
    url_match: tuple[int, int]
    counts: np.ndarray
    description: np.ndarray

    def to_vector(self) -> np.ndarray:
        head = [
            self.has_account,
            self.verified,
            self.created_year,
            self.has_location,
            *self.url_match,
        ]
        return np.concatenate([np.asarray(head, dtype=np.float64), self.counts, self.description])

    @staticmethod
    def names(dim: int) -> list[str]:
        return [
            "has_account",
            "verified",
            "created_year",
            "has_location",
            "has_url",
            "url_matches",
            *(f"log1p_{c}" for c in COUNT_FIELDS),
            *(f"description[{i}]" for i in range(dim)),
        ]

    @staticmethod
    def length(dim: int) -> int:
        return TWITTER_SCALARS + dim


def _segment_text(snap: WikiSnapshot, segment: str) -> str:
    value = getattr(snap, segment)
    return " ".join(value) if isinstance(value, tuple) else value


def wiki_features(snap: WikiSnapshot, table: EmbeddingTable) -> WikiFeatureBlock:
    if not snap.exists:
        zeros = tuple(np.zeros(table.dim) for _ in WIKI_SEGMENTS)
        return WikiFeatureBlock(0, zeros)
    segments = tuple(
        avg_embedding(tokenize(_segment_text(snap, seg)).tokens, table) for seg in WIKI_SEGMENTS
    )
    return WikiFeatureBlock(1, segments)


def normalize_host(url: str) -> str | None:
    """
    Lowercase host without ``www.``, port or trailing dot; ``None`` if there is no host.

    A missing scheme is tolerated (``foxnews.com/x`` has host ``foxnews.com``).
    """
    text = url.strip()
    if not text or any(ch.isspace() for ch in text):
        return None
    if "://" not in text:
        text = "http://" + text
    try:
        host = urlsplit(text).hostname
    except ValueError:
        return None
    if not host:
        return None
    host = host.rstrip(".")
    return host.removeprefix("www.") or None


def url_match(profile_url: str | None, medium_url: str) -> tuple[int, int]:
    """
    ``(has_url, matches)`` for a profile URL against the medium's URL.

    Hosts must be equal after normalization, so a look-alike suffix such as
    ``abcnews.com.co`` does not match ``abcnews.com``.

    :raises ValueError: ``medium_url`` has no parseable host.
    """
    medium_host = normalize_host(medium_url)
    if medium_host is None:
        raise ValueError(f"medium URL has no parseable host: {medium_url!r}")
    if profile_url is None:
        return (0, 0)
    profile_host = normalize_host(profile_url)
    if profile_host is None:
        return (0, 0)
    return (1, int(profile_host == medium_host))


def twitter_features(
    profile: TwitterProfile, medium_url: str, table: EmbeddingTable
) -> TwitterFeatureBlock:
    if not profile.exists:
        return TwitterFeatureBlock(
            has_account=0,
            verified=0,
            created_year=0,
            has_location=0,
            url_match=(0, 0),
            counts=np.zeros(len(COUNT_FIELDS)),
            description=np.zeros(table.dim),
        )
    return TwitterFeatureBlock(
        has_account=1,
        verified=int(profile.verified),
        created_year=profile.created_year or 0,
        has_location=int(bool(profile.location and profile.location.strip())),
        url_match=url_match(profile.profile_url, medium_url),
        counts=np.log1p(np.asarray(profile.counts, dtype=np.float64)),
        description=avg_embedding(tokenize(profile.description).tokens, table),
    )
