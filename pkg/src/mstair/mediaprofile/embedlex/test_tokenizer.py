"""
Tests for the rule-based tokenizer.
"""

from __future__ import annotations

import pytest

from mstair.mediaprofile.embedlex.tokenizer import count_sentences, tokenize


# ---------- Tokens ----------


class TestTokens:
    def test_empty(self) -> None:
        t = tokenize("")
        assert t.tokens == () and t.punctuation == () and t.sentence_count == 0

    def test_fake_news(self) -> None:
        t = tokenize("Fake News!")
        assert t.tokens == ("fake", "news")
        assert t.words == ("Fake", "News")
        assert t.punctuation == ("!",)
        assert t.sentence_count == 1

    def test_apostrophes_stay_inside_tokens(self) -> None:
        t = tokenize("You won’t believe 'this'")
        assert t.tokens == ("you", "won't", "believe", "this")
        assert t.punctuation == ()

    def test_digits_and_unicode_letters(self) -> None:
        assert tokenize("Über 2019 café_bar").tokens == ("über", "2019", "café", "bar")

    def test_punctuation_is_one_entry_per_character(self) -> None:
        assert tokenize("Wait... what?!").punctuation == (".", ".", ".", "?", "!")

    @pytest.mark.parametrize(
        "text",
        ["Dr. Smith won. Really?", "It's 3 o'clock, Mr. O'Neil!", "Ça va? Très bien."],
    )
    def test_idempotent_on_joined_tokens(self, text: str) -> None:
        first = tokenize(text).tokens
        assert tokenize(" ".join(first)).tokens == first


# ---------- Sentences ----------


class TestSentences:
    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("Dr. Smith won. Really?", 2),
            ("One. Two. Three.", 3),
            ("He left. then came back.", 1),
            ("Wait... What?", 2),
            ("J. Doe arrived. She sat.", 2),
            ("She said \"Go.\" \"Now!\"", 1),
            ("Ends without a terminator", 1),
            ("!!!", 0),
            ("Breaking news! (Update) More later.", 2),
        ],
    )
    def test_count(self, text: str, expected: int) -> None:
        assert count_sentences(text) == expected

    def test_custom_abbreviations(self) -> None:
        assert count_sentences("Meet Smith. He waits.", abbreviations={"smith"}) == 1
        assert count_sentences("Meet Smith. He waits.", abbreviations=()) == 2
