"""
Tests for lexicon parsing and matching.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from mstair.mediaprofile.base.errors import LexiconParseError
from mstair.mediaprofile.embedlex.lexicon import Lexicon, lexicon_ratio, load_lexicon, load_lexicons


class TestLexiconRatio:
    def test_empty_tokens(self) -> None:
        assert lexicon_ratio([], Lexicon.from_terms("x", ["good"])) == 0.0

    def test_literal(self) -> None:
        assert lexicon_ratio(["good", "bad"], Lexicon.from_terms("x", ["good"])) == 0.5

    def test_prefix(self) -> None:
        lex = Lexicon.from_terms("care", ["care*"])
        assert lexicon_ratio(["careful", "cared"], lex) == 1.0
        assert not lex.matches("caring")
        assert lex.matches("care")

    def test_monotone_numerator(self) -> None:
        lex = Lexicon.from_terms("x", ["good", "nice*"])
        tokens = ["good", "rain", "nicely"]
        assert lex.count([*tokens, "nicest"]) == lex.count(tokens) + 1

    def test_entries_round_trip(self) -> None:
        lex = Lexicon.from_terms("x", ["good", "care*"])
        assert lex.entries == frozenset({"good", "care*"})


class TestLoadLexicon:
    def test_comments_and_blank_lines(self, tmp_path: Path) -> None:
        path = tmp_path / "positive.txt"
        path.write_text("# header\n\ngood\nhapp*  # trailing comment\n", encoding="utf-8")
        lex = load_lexicon(path)
        assert lex.name == "positive"
        assert lex.literals == frozenset({"good"}) and lex.prefixes == ("happ",)

    @pytest.mark.parametrize(
        ("line", "message"),
        [("Good", "not lowercase"), ("ca*re", "may only end"), ("*", "empty term")],
    )
    def test_bad_term_reports_line(self, tmp_path: Path, line: str, message: str) -> None:
        path = tmp_path / "bad.txt"
        path.write_text(f"ok\n{line}\n", encoding="utf-8")
        with pytest.raises(LexiconParseError, match=message) as info:
            load_lexicon(path)
        assert info.value.line == 2

    def test_directory_keyed_by_stem(self, tmp_path: Path) -> None:
        (tmp_path / "a.txt").write_text("x\n", encoding="utf-8")
        (tmp_path / "b.txt").write_text("y*\n", encoding="utf-8")
        (tmp_path / "notes.md").write_text("ignored\n", encoding="utf-8")
        assert sorted(load_lexicons(tmp_path)) == ["a", "b"]
