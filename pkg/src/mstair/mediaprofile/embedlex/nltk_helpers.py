"""
NLTK-backed English stopwords, persisted in a diskcache store under ``cache_dir("nltk")``.

The corpus is downloaded at most once per cache directory; later processes
read the cached set without touching NLTK at all.
"""

from __future__ import annotations

from functools import cache
from typing import Final

import diskcache
import nltk
from nltk.downloader import download as nltk_download

from mstair.mediaprofile.base.constants import cache_dir
from mstair.mediaprofile.base.errors import DataError
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["STOPWORDS_CACHE_KEY", "load_stopwords", "nltk_cache"]

_LOG = create_logger(__name__)

STOPWORDS_CACHE_KEY: Final = "nltk.corpus.stopwords.en"


@cache
def nltk_cache() -> diskcache.Cache:
    """Return a diskcache.Cache instance for NLTK-related caching."""
    return diskcache.Cache(directory=str(cache_dir("nltk")), size_limit=100 * 1024 * 1024)


def _english_stopwords() -> frozenset[str]:
    try:
        return frozenset(nltk.corpus.stopwords.words("english"))
    except LookupError:
        _LOG.info("downloading the NLTK stopwords corpus")
        nltk_download("stopwords", quiet=True)
    try:
        return frozenset(nltk.corpus.stopwords.words("english"))
    except LookupError as exc:
        raise DataError(f"NLTK stopwords corpus unavailable: {exc}") from exc


@cache
def load_stopwords() -> frozenset[str]:
    """
    Lowercase English stopwords from NLTK, cached on disk.

    :raises DataError: the corpus is neither installed nor downloadable.
    """
    cached = nltk_cache().get(STOPWORDS_CACHE_KEY)
    if isinstance(cached, frozenset | set) and cached and all(isinstance(w, str) for w in cached):
        return frozenset(cached)
    value = frozenset(w.lower() for w in _english_stopwords())
    nltk_cache().set(STOPWORDS_CACHE_KEY, value)
    _LOG.debug("cached %d stopwords under %s", len(value), STOPWORDS_CACHE_KEY)
    return value
