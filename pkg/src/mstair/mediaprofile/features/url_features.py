"""
URL orthography and credibility cues, character n-grams and the traffic feature.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache
from typing import Any, Final
from urllib.parse import urlsplit

import numpy as np
import tldextract
from sklearn.feature_extraction.text import CountVectorizer

from mstair.mediaprofile.base.errors import UrlExtractionError
from mstair.mediaprofile.embedlex.resources import ResourceBundle


__all__ = [
    "URL_FEATURE_NAMES",
    "UrlFeatureBlock",
    "UrlNgramVectorizer",
    "traffic_feature",
    "url_char_ngrams",
    "url_sections",
    "url_structure_features",
]

URL_FEATURE_NAMES: Final[tuple[str, ...]] = (
    "url_length",
    "section_count",
    "digit_char_ratio",
    "special_char_ratio",
    "has_digit_section",
    "has_hyphen_in_host",
    "has_underscore",
    "has_short_section",
    "has_long_section",
    "uses_https",
    "on_blog_host",
    "tld_class",
)

_SHORT_SECTION: Final = 3
_LONG_SECTION: Final = 10
_PLAIN_CHARS: Final = frozenset("./:")


@cache
def _suffix_extractor() -> tldextract.TLDExtract:
    # bundled public-suffix snapshot only; never fetched over the network
    return tldextract.TLDExtract(cache_dir=None, suffix_list_urls=())


@dataclass(frozen=True, slots=True)
class UrlFeatureBlock:
    url_length: int
    section_count: int
    digit_char_ratio: float
    special_char_ratio: float
    has_digit_section: int
    has_hyphen_in_host: int
    has_underscore: int
    has_short_section: int
    has_long_section: int
    uses_https: int
    on_blog_host: int
    tld_class: int

    def to_vector(self) -> np.ndarray:
        return np.asarray([getattr(self, name) for name in URL_FEATURE_NAMES], dtype=np.float64)


@dataclass(frozen=True, slots=True)
class _ParsedUrl:
    text: str
    scheme: str
    host: str
    path_segments: tuple[str, ...]


def _parse(url: str) -> _ParsedUrl:
    text = url.strip()
    if not text:
        raise UrlExtractionError(url, "empty URL")
    if any(ch.isspace() for ch in text):
        raise UrlExtractionError(url, "URL contains whitespace")
    has_scheme = "://" in text
    try:
        parts = urlsplit(text if has_scheme else "http://" + text)
        host = parts.hostname
    except ValueError as exc:
        raise UrlExtractionError(url, str(exc)) from exc
    if not host:
        raise UrlExtractionError(url, "no host")
    scheme = parts.scheme.lower()
    if has_scheme:
        text = scheme + text[len(parts.scheme) :]
    if text.endswith("/"):
        text = text[:-1]
    segments = tuple(s for s in parts.path.split("/") if s)
    return _ParsedUrl(text, scheme, host.rstrip("."), segments)


def url_sections(url: str) -> list[str]:
    """Host labels split on ``.`` followed by non-empty path segments split on ``/``."""
    parsed = _parse(url)
    return [*parsed.host.split("."), *parsed.path_segments]


def _tld_class(host: str, special: dict[str, int]) -> int:
    suffix = _suffix_extractor()(host).suffix.lower()
    if suffix in special:
        return special[suffix]
    # gov.uk, edu.au: a trusted first label vouches for the whole suffix
    if special.get(suffix.split(".", 1)[0]) == 1:
        return 1
    last = (suffix or host).rsplit(".", 1)[-1]
    return special.get(last, 0)


def _on_blog_host(host: str, blog_hosts: Sequence[str]) -> bool:
    return any(host == b or host.endswith("." + b) for b in blog_hosts)


def url_structure_features(url: str, resources: ResourceBundle) -> UrlFeatureBlock:
    """
    The twelve URL features in ``URL_FEATURE_NAMES`` order.

    Character statistics are taken over the URL as given, with any scheme
    lowercased and one trailing slash removed. A scheme-less URL is parsed as
    ``http`` but measured without the added prefix.

    :raises UrlExtractionError: empty or whitespace-bearing URL, or no host.
    """
    parsed = _parse(url)
    text = parsed.text
    sections = [*parsed.host.split("."), *parsed.path_segments]
    length = len(text)
    return UrlFeatureBlock(
        url_length=length,
        section_count=len(sections),
        digit_char_ratio=sum(ch.isdigit() for ch in text) / length,
        special_char_ratio=sum(not ch.isalnum() and ch not in _PLAIN_CHARS for ch in text)
        / length,
        has_digit_section=int(any(any(ch.isdigit() for ch in s) for s in sections)),
        has_hyphen_in_host=int("-" in parsed.host),
        has_underscore=int("_" in text),
        has_short_section=int(any(len(s) < _SHORT_SECTION for s in sections)),
        has_long_section=int(any(len(s) > _LONG_SECTION for s in sections)),
        uses_https=int(parsed.scheme == "https"),
        on_blog_host=int(_on_blog_host(parsed.host, resources.blog_hosts)),
        tld_class=_tld_class(parsed.host, resources.special_tlds),
    )


def traffic_feature(alexa_rank: int | None) -> np.ndarray:
    """``[1 / rank]``, or ``[0.0]`` without a rank."""
    if alexa_rank is None:
        return np.zeros(1)
    if alexa_rank <= 0:
        raise ValueError(f"traffic rank must be >= 1, got {alexa_rank}")
    return np.asarray([1.0 / alexa_rank])


class UrlNgramVectorizer:
    """
    Binary presence of character n-grams over a vocabulary frozen at ``fit``.

    Grams never seen during ``fit`` are ignored by ``transform``.
    """

    def __init__(self, n_range: tuple[int, int] = (2, 5)) -> None:
        lo, hi = n_range
        if not 2 <= lo <= hi <= 5:
            raise ValueError(f"n-gram range must lie within [2, 5], got {n_range}")
        self.n_range = (lo, hi)
        self._vocabulary: tuple[str, ...] | None = None
        self._vectorizer: CountVectorizer | None = None

    def _make(self, vocabulary: Sequence[str] | None = None) -> CountVectorizer:
        return CountVectorizer(
            analyzer="char",
            ngram_range=self.n_range,
            binary=True,
            lowercase=True,
            vocabulary=None if vocabulary is None else list(vocabulary),
            dtype=np.float64,
        )

    def _freeze(self, vocabulary: Iterable[str]) -> None:
        self._vocabulary = tuple(sorted(set(vocabulary)))
        self._vectorizer = self._make(self._vocabulary) if self._vocabulary else None

    def fit(self, urls: Iterable[str]) -> UrlNgramVectorizer:
        analyze = self._make().build_analyzer()
        self._freeze(gram for url in urls for gram in analyze(url.strip()))
        return self

    @property
    def fitted(self) -> bool:
        return self._vocabulary is not None

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return self._vocabulary or ()

    def transform(self, urls: Sequence[str]) -> np.ndarray:
        if self._vocabulary is None:
            raise RuntimeError("UrlNgramVectorizer.transform called before fit")
        if self._vectorizer is None:
            return np.zeros((len(urls), 0))
        matrix = self._vectorizer.transform([u.strip() for u in urls])
        return np.asarray(matrix.toarray(), dtype=np.float64)

    def to_json(self) -> dict[str, Any]:
        return {"n_range": list(self.n_range), "vocabulary": list(self.vocabulary)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> UrlNgramVectorizer:
        lo, hi = data["n_range"]
        out = cls((int(lo), int(hi)))
        out._freeze(str(g) for g in data["vocabulary"])
        return out


def url_char_ngrams(url: str, vectorizer: UrlNgramVectorizer) -> np.ndarray:
    """Presence vector of ``url``'s character n-grams over the fitted vocabulary."""
    return vectorizer.transform([url])[0]
