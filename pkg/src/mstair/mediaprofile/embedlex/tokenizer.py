"""
Rule-based tokenizer shared by every text featurizer.

Tokens are contiguous runs of letters, digits and apostrophes, lowercased.
Punctuation characters are collected separately, one entry per character.
Sentences end at a run of ``.``, ``!`` or ``?`` followed by whitespace and an
uppercase letter (optionally behind an opening quote or bracket), or at the
end of the text. A bare ``.`` after a single letter or a known abbreviation
does not end a sentence.
"""

from __future__ import annotations

import re
from collections.abc import Collection
from dataclasses import dataclass
from typing import Final


__all__ = ["DEFAULT_ABBREVIATIONS", "TokenizedText", "count_sentences", "tokenize"]

_WORD_RX: Final = re.compile(r"[^\W_](?:[^\W_]|')*", re.UNICODE)
_PUNCT_RX: Final = re.compile(r"[^\w\s']|_", re.UNICODE)
_TERMINATOR_RX: Final = re.compile(r"[.!?]+")
_NEXT_START_RX: Final = re.compile(r"\s+[\"'“‘(\[]*[A-Z]")
_PREV_WORD_RX: Final = re.compile(r"([^\W_]+)$", re.UNICODE)
_APOSTROPHES: Final = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})

DEFAULT_ABBREVIATIONS: Final[frozenset[str]] = frozenset(
    {"dr", "mr", "mrs", "ms", "prof", "sr", "jr", "st", "vs", "etc", "inc", "ltd", "co", "gen",
     "gov", "sen", "rep", "lt", "col", "capt", "sgt", "no", "jan", "feb", "mar", "apr", "aug",
     "sept", "sep", "oct", "nov", "dec"}
)  # fmt: skip


@dataclass(frozen=True, slots=True)
class TokenizedText:
    tokens: tuple[str, ...]
    """Lowercased tokens."""
    words: tuple[str, ...]
    """The same tokens in original casing."""
    punctuation: tuple[str, ...]
    sentence_count: int


def _words(text: str) -> list[str]:
    return [m.group(0).strip("'") for m in _WORD_RX.finditer(text) if m.group(0).strip("'")]


def count_sentences(text: str, abbreviations: Collection[str] = DEFAULT_ABBREVIATIONS) -> int:
    """
    Number of sentence segments that contain at least one word character.

    >>> count_sentences("Dr. Smith won. Really?")
    2
    """
    segments = 0
    start = 0
    for m in _TERMINATOR_RX.finditer(text):
        end = m.end()
        at_end = not text[end:].strip()
        if not at_end and not _NEXT_START_RX.match(text, end):
            continue
        if m.group(0) == "." and not at_end:
            prev = _PREV_WORD_RX.search(text, start, m.start())
            if prev is not None:
                word = prev.group(1).lower()
                if len(word) == 1 or word in abbreviations:
                    continue
        if _WORD_RX.search(text, start, m.start()):
            segments += 1
        start = end
    if _WORD_RX.search(text, start):
        segments += 1
    return segments


def tokenize(text: str, abbreviations: Collection[str] = DEFAULT_ABBREVIATIONS) -> TokenizedText:
    """
    Split ``text`` into tokens, punctuation and a sentence count.

    >>> t = tokenize("Fake News!")
    >>> t.tokens, t.punctuation, t.sentence_count
    (('fake', 'news'), ('!',), 1)
    """
    if not text:
        return TokenizedText((), (), (), 0)
    normalized = text.translate(_APOSTROPHES)
    words = _words(normalized)
    return TokenizedText(
        tokens=tuple(w.lower() for w in words),
        words=tuple(words),
        punctuation=tuple(_PUNCT_RX.findall(normalized)),
        sentence_count=count_sentences(normalized, abbreviations),
    )
