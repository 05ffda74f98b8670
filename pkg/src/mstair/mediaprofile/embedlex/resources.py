"""
Loading of the shared text resources from one directory.

English stopwords come from NLTK (see embedlex.nltk_helpers) rather than the directory.

Layout::

    <resource_dir>/
        lexicons/*.txt          word lists, see embedlex.lexicon
        abbreviations.txt       whitespace-separated, lowercase, no period
        clickbait_phrases.txt   one cue phrase per line
        blog_hosts.txt          one host suffix per line
        special_tlds.txt        "<suffix> <+1|-1>" per line
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cache
from pathlib import Path
from typing import Final

from mstair.mediaprofile.base.constants import packaged_resource_dir
from mstair.mediaprofile.base.errors import LexiconParseError
from mstair.mediaprofile.base.fs_helpers import StrPath, fs_sha256_tree
from mstair.mediaprofile.embedlex.lexicon import Lexicon, load_lexicons
from mstair.mediaprofile.embedlex.nltk_helpers import load_stopwords
from mstair.mediaprofile.embedlex.tokenizer import tokenize
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = [
    "REQUIRED_LEXICONS",
    "ResourceBundle",
    "default_resources",
    "load_resources",
    "resource_fingerprint",
]

_LOG = create_logger(__name__)

REQUIRED_LEXICONS: Final[tuple[str, ...]] = (
    "positive", "negative", "subjective", "negation",
    "science", "personal_concern",
    "insight", "discrepancy", "certainty", "tentative",
    "hedges", "assertive_verbs", "factive_verbs", "implicative_verbs", "report_verbs", "bias_words",
    "care_virtue", "care_vice", "fairness_virtue", "fairness_vice",
    "loyalty_virtue", "loyalty_vice", "authority_virtue", "authority_vice",
    "sanctity_virtue", "sanctity_vice",
)  # fmt: skip

_RESOURCE_FILES: Final[tuple[str, ...]] = (
    "abbreviations.txt",
    "clickbait_phrases.txt",
    "blog_hosts.txt",
    "special_tlds.txt",
)


@dataclass(frozen=True, slots=True)
class ResourceBundle:
    directory: Path
    lexicons: dict[str, Lexicon]
    stopwords: frozenset[str]
    abbreviations: frozenset[str]
    clickbait_phrases: tuple[tuple[str, ...], ...]
    """Cue phrases as lowercased token sequences."""
    blog_hosts: tuple[str, ...]
    special_tlds: dict[str, int]
    fingerprint: str

    def lexicon(self, name: str) -> Lexicon:
        return self.lexicons[name]


def _content_lines(path: Path) -> list[tuple[int, str]]:
    out: list[tuple[int, str]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            out.append((lineno, text))
    return out


def _words(path: Path) -> frozenset[str]:
    return frozenset(w.lower() for _, line in _content_lines(path) for w in line.split())


def _special_tlds(path: Path) -> dict[str, int]:
    table: dict[str, int] = {}
    for lineno, line in _content_lines(path):
        parts = line.split()
        if len(parts) != 2 or parts[1] not in {"+1", "-1", "1"}:
            raise LexiconParseError(
                f"expected '<suffix> <+1|-1>', got {line!r}", path=path, line=lineno
            )
        table[parts[0].lower().strip(".")] = int(parts[1])
    return table


def _resource_paths(directory: Path) -> list[Path]:
    return [directory / name for name in _RESOURCE_FILES] + sorted(
        (directory / "lexicons").glob("*.txt")
    )


def resource_fingerprint(directory: StrPath, stopwords: Iterable[str] | None = None) -> str:
    """
    SHA-256 over every resource file (names and bytes) and the stopword set.

    :param stopwords: The set in use; ``load_stopwords()`` when omitted.
    """
    words = load_stopwords() if stopwords is None else stopwords
    return fs_sha256_tree(_resource_paths(Path(directory)), extra=sorted(words))


def load_resources(
    directory: StrPath | None = None, *, stopwords: Iterable[str] | None = None
) -> ResourceBundle:
    """
    Load every resource under ``directory`` (the packaged set by default).

    :param stopwords: Overrides the NLTK English stopwords.

    :raises FileNotFoundError: a resource file is missing.
    :raises LexiconParseError: a malformed lexicon or TLD line, or a required lexicon is absent.
    :raises DataError: the NLTK stopwords corpus cannot be loaded.
    """
    root = Path(directory) if directory is not None else packaged_resource_dir()
    missing = [p for p in _resource_paths(root)[: len(_RESOURCE_FILES)] if not p.is_file()]
    if missing:
        raise FileNotFoundError(f"missing resource file(s): {', '.join(map(str, missing))}")
    lexicons = load_lexicons(root / "lexicons")
    absent = [name for name in REQUIRED_LEXICONS if name not in lexicons]
    if absent:
        raise LexiconParseError(
            f"required lexicon(s) missing: {', '.join(absent)}", path=root / "lexicons", line=0
        )
    stop = frozenset(w.lower() for w in (load_stopwords() if stopwords is None else stopwords))
    abbreviations = _words(root / "abbreviations.txt")
    phrases = tuple(
        tokenize(line, abbreviations).tokens
        for _, line in _content_lines(root / "clickbait_phrases.txt")
    )
    bundle = ResourceBundle(
        directory=root,
        lexicons=lexicons,
        stopwords=stop,
        abbreviations=abbreviations,
        clickbait_phrases=tuple(p for p in phrases if p),
        blog_hosts=tuple(
            line.lower().strip(".") for _, line in _content_lines(root / "blog_hosts.txt")
        ),
        special_tlds=_special_tlds(root / "special_tlds.txt"),
        fingerprint=resource_fingerprint(root, stop),
    )
    _LOG.debug("loaded %d lexicons from %s", len(lexicons), root)
    return bundle


@cache
def default_resources() -> ResourceBundle:
    """The packaged resources, loaded once per process."""
    return load_resources(None)
