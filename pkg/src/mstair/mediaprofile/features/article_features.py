"""
Lexicon and regex features for article titles and bodies.

Every segment (a title or a body) maps to the same 51-feature vector whose
order is fixed by ``ARTICLE_FEATURE_MANIFEST``. A medium's article block is the
mean over its articles of ``title features ++ body features``.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from typing import Final, Literal

import numpy as np

from mstair.mediaprofile.corpus.records import ArticleDoc
from mstair.mediaprofile.embedlex.resources import ResourceBundle
from mstair.mediaprofile.embedlex.tokenizer import tokenize


__all__ = [
    "ARTICLE_DIM",
    "ARTICLE_FEATURE_MANIFEST",
    "ArticleGroup",
    "article_manifest_json",
    "article_segment_names",
    "count_syllables",
    "medium_article_block",
    "segment_features",
]

ArticleGroup = Literal["structure", "sentiment", "topic", "complexity", "bias", "morality"]

_MORAL_FOUNDATIONS: Final = ("care", "fairness", "loyalty", "authority", "sanctity")

ARTICLE_FEATURE_MANIFEST: Final[tuple[tuple[str, ArticleGroup], ...]] = (
    ("char_count", "structure"),
    ("word_count", "structure"),
    ("sentence_count", "structure"),
    ("avg_word_length", "structure"),
    ("avg_sentence_length", "structure"),
    ("exclamation_per_sentence", "structure"),
    ("question_per_sentence", "structure"),
    ("all_caps_word_ratio", "structure"),
    ("digit_token_ratio", "structure"),
    ("punctuation_per_token", "structure"),
    ("quote_char_count", "structure"),
    ("stopword_ratio", "structure"),
    ("first_person_ratio", "structure"),
    ("second_person_ratio", "structure"),
    ("third_person_ratio", "structure"),
    ("starts_with_number", "structure"),
    ("contains_question_word", "structure"),
    ("contains_demonstrative", "structure"),
    ("contains_clickbait_phrase", "structure"),
    ("positive_ratio", "sentiment"),
    ("negative_ratio", "sentiment"),
    ("polarity", "sentiment"),
    ("subjectivity_ratio", "sentiment"),
    ("negation_ratio", "sentiment"),
    ("science_ratio", "topic"),
    ("personal_concern_ratio", "topic"),
    ("type_token_ratio", "complexity"),
    ("flesch_reading_ease", "complexity"),
    ("flesch_kincaid_grade", "complexity"),
    ("gunning_fog", "complexity"),
    ("long_word_ratio", "complexity"),
    ("insight_ratio", "complexity"),
    ("discrepancy_ratio", "complexity"),
    ("certainty_ratio", "complexity"),
    ("tentative_ratio", "complexity"),
    ("hedge_ratio", "bias"),
    ("assertive_verb_ratio", "bias"),
    ("factive_verb_ratio", "bias"),
    ("implicative_verb_ratio", "bias"),
    ("report_verb_ratio", "bias"),
    ("bias_lexicon_ratio", "bias"),
    *(
        (f"{foundation}_{pole}_ratio", "morality")
        for foundation in _MORAL_FOUNDATIONS
        for pole in ("virtue", "vice")
    ),
)

ARTICLE_DIM: Final = len(ARTICLE_FEATURE_MANIFEST)

# lexicon name for every "<name>" feature computed as a plain lexicon ratio
_LEXICON_FEATURES: Final[dict[str, str]] = {
    "subjectivity_ratio": "subjective",
    "negation_ratio": "negation",
    "science_ratio": "science",
    "personal_concern_ratio": "personal_concern",
    "insight_ratio": "insight",
    "discrepancy_ratio": "discrepancy",
    "certainty_ratio": "certainty",
    "tentative_ratio": "tentative",
    "hedge_ratio": "hedges",
    "assertive_verb_ratio": "assertive_verbs",
    "factive_verb_ratio": "factive_verbs",
    "implicative_verb_ratio": "implicative_verbs",
    "report_verb_ratio": "report_verbs",
    "bias_lexicon_ratio": "bias_words",
    **{
        f"{foundation}_{pole}_ratio": f"{foundation}_{pole}"
        for foundation in _MORAL_FOUNDATIONS
        for pole in ("virtue", "vice")
    },
}

_FIRST_PERSON: Final = frozenset(
    {"i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"}
)
_SECOND_PERSON: Final = frozenset({"you", "your", "yours", "yourself", "yourselves"})
_THIRD_PERSON: Final = frozenset(
    {"he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself",
     "they", "them", "their", "theirs", "themselves"}
)  # fmt: skip
_QUESTION_WORDS: Final = frozenset(
    {"what", "why", "how", "when", "where", "who", "whom", "whose", "which"}
)
_DEMONSTRATIVES: Final = frozenset({"this", "that", "these", "those"})
_NUMBER_WORDS: Final = frozenset(
    {"one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
     "eleven", "twelve", "twenty", "hundred"}
)  # fmt: skip
_QUOTE_CHARS: Final = frozenset('"“”„«»')

_VOWEL_GROUP_RX: Final = re.compile(r"[aeiouy]+")
_VOWELS: Final = frozenset("aeiouy")

_INDEX: Final[dict[str, int]] = {name: i for i, (name, _) in enumerate(ARTICLE_FEATURE_MANIFEST)}


def count_syllables(word: str) -> int:
    """
    Heuristic syllable count: vowel groups, less a silent final ``e``, at least 1.

    A final ``e`` after a consonant is silent unless it closes a consonant+``le``
    ending (``table``).

    >>> count_syllables("table"), count_syllables("the"), count_syllables("make")
    (2, 1, 1)
    """
    if not word:
        raise ValueError("count_syllables needs a non-empty token")
    w = word.lower()
    count = len(_VOWEL_GROUP_RX.findall(w))
    if (
        len(w) >= 2
        and w.endswith("e")
        and w[-2] not in _VOWELS
        and not (w.endswith("le") and len(w) >= 3 and w[-3] not in _VOWELS)
        and count > 1
    ):
        count -= 1
    return max(count, 1)


def _contains_phrase(tokens: Sequence[str], phrases: Sequence[tuple[str, ...]]) -> bool:
    for phrase in phrases:
        n = len(phrase)
        if n == 0 or n > len(tokens):
            continue
        first = phrase[0]
        for i in range(len(tokens) - n + 1):
            if tokens[i] == first and tuple(tokens[i : i + n]) == phrase:
                return True
    return False


def _is_all_caps(word: str) -> bool:
    return word.isupper() and sum(ch.isalpha() for ch in word) >= 2


def _pronoun_base(token: str) -> str:
    return token.split("'", 1)[0]


def segment_features(text: str, resources: ResourceBundle) -> np.ndarray:
    """
    The 51 features of one title or body, in ``ARTICLE_FEATURE_MANIFEST`` order.

    Ratios divide by ``max(1, token count)`` and per-sentence rates by
    ``max(1, sentence count)``. Text without any word yields the zero vector.
    """
    out = np.zeros(ARTICLE_DIM, dtype=np.float64)
    tok = tokenize(text, resources.abbreviations)
    tokens = tok.tokens
    n = len(tokens)
    if n == 0:
        return out
    sentences = max(1, tok.sentence_count)
    lex = resources.lexicons

    def put(name: str, value: float) -> None:
        out[_INDEX[name]] = value

    syllables = [count_syllables(t) for t in tokens]
    pronouns = [_pronoun_base(t) for t in tokens]

    # structure
    put("char_count", len(text))
    put("word_count", n)
    put("sentence_count", tok.sentence_count)
    put("avg_word_length", sum(len(t) for t in tokens) / n)
    put("avg_sentence_length", n / sentences)
    put("exclamation_per_sentence", tok.punctuation.count("!") / sentences)
    put("question_per_sentence", tok.punctuation.count("?") / sentences)
    put("all_caps_word_ratio", sum(map(_is_all_caps, tok.words)) / n)
    put("digit_token_ratio", sum(any(ch.isdigit() for ch in t) for t in tokens) / n)
    put("punctuation_per_token", len(tok.punctuation) / n)
    put("quote_char_count", sum(ch in _QUOTE_CHARS for ch in text))
    put("stopword_ratio", sum(t in resources.stopwords for t in tokens) / n)
    put("first_person_ratio", sum(p in _FIRST_PERSON for p in pronouns) / n)
    put("second_person_ratio", sum(p in _SECOND_PERSON for p in pronouns) / n)
    put("third_person_ratio", sum(p in _THIRD_PERSON for p in pronouns) / n)
    put("starts_with_number", float(tokens[0][0].isdigit() or tokens[0] in _NUMBER_WORDS))
    put("contains_question_word", float(not _QUESTION_WORDS.isdisjoint(tokens)))
    put("contains_demonstrative", float(not _DEMONSTRATIVES.isdisjoint(tokens)))
    put("contains_clickbait_phrase", float(_contains_phrase(tokens, resources.clickbait_phrases)))

    # sentiment
    pos = lex["positive"].count(tokens)
    neg = lex["negative"].count(tokens)
    put("positive_ratio", pos / n)
    put("negative_ratio", neg / n)
    put("polarity", (pos - neg) / (pos + neg) if pos + neg else 0.0)

    # complexity
    words_per_sentence = n / sentences
    syllables_per_word = sum(syllables) / n
    complex_words = sum(s >= 3 for s in syllables)
    put("type_token_ratio", len(set(tokens)) / n)
    put("flesch_reading_ease", 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word)
    put("flesch_kincaid_grade", 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59)
    put("gunning_fog", 0.4 * (words_per_sentence + 100.0 * complex_words / n))
    put("long_word_ratio", sum(len(t) >= 7 for t in tokens) / n)

    for name, lexicon_name in _LEXICON_FEATURES.items():
        put(name, lex[lexicon_name].count(tokens) / n)
    return out


def medium_article_block(articles: Sequence[ArticleDoc], resources: ResourceBundle) -> np.ndarray:
    """Mean over articles of title features followed by body features; zeros when empty."""
    if not articles:
        return np.zeros(2 * ARTICLE_DIM, dtype=np.float64)
    rows = np.vstack(
        [
            np.concatenate(
                [segment_features(a.title, resources), segment_features(a.body, resources)]
            )
            for a in articles
        ]
    )
    return rows.mean(axis=0)


def article_segment_names(prefix: str) -> list[str]:
    return [f"{prefix}.{name}" for name, _ in ARTICLE_FEATURE_MANIFEST]


def article_manifest_json() -> list[dict[str, object]]:
    """``[{"name", "group", "index"}]`` in vector order, exported next to trained models."""
    return [
        {"name": name, "group": group, "index": i}
        for i, (name, group) in enumerate(ARTICLE_FEATURE_MANIFEST)
    ]
