"""
Data model: labelled media and their raw evidence bundles.

Missing evidence is explicit (``exists`` flags, ``None`` fields); nothing is
imputed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Final


__all__ = [
    "COUNT_FIELDS",
    "ArticleDoc",
    "EvidenceBundle",
    "MediumRecord",
    "TwitterProfile",
    "WikiSnapshot",
]

COUNT_FIELDS: Final[tuple[str, ...]] = ("followers", "friends", "statuses", "favorites", "listed")


@dataclass(frozen=True, slots=True)
class MediumRecord:
    medium_id: str
    url: str
    factuality: int
    bias7: int


@dataclass(frozen=True, slots=True)
class ArticleDoc:
    title: str
    body: str
    published_at: date | None = None


@dataclass(frozen=True, slots=True)
class WikiSnapshot:
    exists: bool = False
    content: str = ""
    summary: str = ""
    infobox: str = ""
    categories: tuple[str, ...] = ()
    toc: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.exists and (
            self.content or self.summary or self.infobox or self.categories or self.toc
        ):
            raise ValueError("a missing Wikipedia page cannot carry text")


@dataclass(frozen=True, slots=True)
class TwitterProfile:
    exists: bool = False
    verified: bool = False
    created_year: int | None = None
    location: str | None = None
    profile_url: str | None = None
    description: str = ""
    counts: tuple[int, int, int, int, int] = (0, 0, 0, 0, 0)

    def __post_init__(self) -> None:
        if len(self.counts) != len(COUNT_FIELDS) or any(c < 0 for c in self.counts):
            raise ValueError(f"counts must be {len(COUNT_FIELDS)} non-negative integers")
        if not self.exists and (
            self.verified
            or self.created_year is not None
            or self.location is not None
            or self.profile_url is not None
            or self.description
            or any(self.counts)
        ):
            raise ValueError("a missing Twitter account cannot carry profile fields")


@dataclass(frozen=True, slots=True)
class EvidenceBundle:
    medium_id: str
    articles: tuple[ArticleDoc, ...] = ()
    wiki: WikiSnapshot = field(default_factory=WikiSnapshot)
    twitter: TwitterProfile = field(default_factory=TwitterProfile)
    alexa_rank: int | None = None
