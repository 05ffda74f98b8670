"""
Word lists with literal and prefix (``stem*``) entries.

File format: one term per line, lowercase, ``#`` starts a comment, a single
trailing ``*`` turns the term into a prefix pattern.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from mstair.mediaprofile.base.errors import LexiconParseError
from mstair.mediaprofile.base.fs_helpers import StrPath


__all__ = ["Lexicon", "lexicon_ratio", "load_lexicon", "load_lexicons"]


@dataclass(frozen=True, slots=True)
class Lexicon:
    name: str
    literals: frozenset[str] = frozenset()
    prefixes: tuple[str, ...] = ()

    @classmethod
    def from_terms(cls, name: str, terms: Iterable[str]) -> Lexicon:
        """Build from raw terms, e.g. ``["good", "care*"]``."""
        literals: set[str] = set()
        prefixes: set[str] = set()
        for i, term in enumerate(terms, start=1):
            problem = _term_problem(term)
            if problem:
                raise LexiconParseError(problem, path=f"<{name}>", line=i)
            if term.endswith("*"):
                prefixes.add(term[:-1])
            else:
                literals.add(term)
        return cls(name, frozenset(literals), tuple(sorted(prefixes)))

    @property
    def entries(self) -> frozenset[str]:
        return self.literals | {p + "*" for p in self.prefixes}

    def matches(self, token: str) -> bool:
        return token in self.literals or (bool(self.prefixes) and token.startswith(self.prefixes))

    def count(self, tokens: Iterable[str]) -> int:
        return sum(1 for t in tokens if self.matches(t))


def lexicon_ratio(tokens: Sequence[str], lex: Lexicon) -> float:
    """Share of tokens matched by ``lex``; 0.0 for no tokens."""
    return lex.count(tokens) / max(1, len(tokens))


def _term_problem(term: str) -> str | None:
    if not term or term == "*":
        return "empty term"
    if term != term.lower():
        return f"term {term!r} is not lowercase"
    if "*" in term[:-1]:
        return f"'*' may only end a term: {term!r}"
    if any(ch.isspace() for ch in term):
        return f"term {term!r} contains whitespace"
    return None


def load_lexicon(path: StrPath, name: str | None = None) -> Lexicon:
    """
    Parse a lexicon file; the name defaults to the file stem.

    :raises LexiconParseError: on the first malformed line.
    """
    p = Path(path)
    literals: set[str] = set()
    prefixes: set[str] = set()
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        term = raw.split("#", 1)[0].strip()
        if not term:
            continue
        problem = _term_problem(term)
        if problem:
            raise LexiconParseError(problem, path=p, line=lineno)
        if term.endswith("*"):
            prefixes.add(term[:-1])
        else:
            literals.add(term)
    return Lexicon(name or p.stem, frozenset(literals), tuple(sorted(prefixes)))


def load_lexicons(directory: StrPath) -> dict[str, Lexicon]:
    """Every ``*.txt`` lexicon in ``directory``, keyed by file stem."""
    return {p.stem: load_lexicon(p) for p in sorted(Path(directory).glob("*.txt"))}
