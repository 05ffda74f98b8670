"""
Synthetic planted-signal corpus.

Writes a small corpus whose labels are recoverable from the planted feature
families and from nothing else: every other family is filled with
label-independent noise. Used by the test-suite and ``mediaprofile synth``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Final

import numpy as np

from mstair.mediaprofile.base.fs_helpers import StrPath, fs_atomic_write_text
from mstair.mediaprofile.corpus.loaders import save_bundle, save_corpus
from mstair.mediaprofile.corpus.records import (
    ArticleDoc,
    EvidenceBundle,
    MediumRecord,
    TwitterProfile,
    WikiSnapshot,
)
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = ["PLANTABLE_FAMILIES", "SyntheticCorpus", "build_synthetic_corpus"]

_LOG = create_logger(__name__)

PLANTABLE_FAMILIES: Final[tuple[str, ...]] = ("traffic", "twitter", "wikipedia")

_NEUTRAL_WORDS: Final[tuple[str, ...]] = (
    "city", "council", "market", "weather", "river", "station", "report", "season",
    "budget", "school", "bridge", "museum", "harbor", "festival", "library", "garden",
    "program", "county", "highway", "airport", "district", "project", "meeting", "vote",
)  # fmt: skip

_N_FACT: Final = 3
_N_BIAS: Final = 7
_SIGNAL_SCALE: Final = 4.0


@dataclass(frozen=True, slots=True)
class SyntheticCorpus:
    corpus: Path
    bundle_root: Path
    embeddings: Path
    records: tuple[MediumRecord, ...]


def _label_word(kind: str, j: int) -> str:
    return f"{kind}{j}"


def _write_embeddings(path: Path, rng: np.random.Generator, dim: int) -> None:
    rows: list[tuple[str, np.ndarray]] = []
    for j in range(_N_FACT):
        vec = rng.normal(0.0, 0.05, dim)
        vec[j] += _SIGNAL_SCALE
        rows.append((_label_word("fact", j), vec))
    for j in range(_N_BIAS):
        vec = rng.normal(0.0, 0.05, dim)
        vec[_N_FACT + j] += _SIGNAL_SCALE
        rows.append((_label_word("bias", j), vec))
    for word in _NEUTRAL_WORDS:
        rows.append((word, rng.normal(0.0, 0.5, dim)))
    lines = [f"{len(rows)} {dim}"]
    lines += [f"{tok} " + " ".join(f"{v:.6f}" for v in vec) for tok, vec in rows]
    fs_atomic_write_text(path, "\n".join(lines) + "\n")


def _neutral_text(rng: np.random.Generator, n_words: int) -> str:
    words = rng.choice(_NEUTRAL_WORDS, size=n_words)
    return " ".join(str(w) for w in words)


def _articles(rng: np.random.Generator) -> tuple[ArticleDoc, ...]:
    docs = []
    for _ in range(int(rng.integers(1, 4))):
        title = _neutral_text(rng, int(rng.integers(3, 8))).title()
        sentences = [
            _neutral_text(rng, int(rng.integers(4, 12))).capitalize() + "."
            for _ in range(int(rng.integers(1, 5)))
        ]
        docs.append(ArticleDoc(title=title, body=" ".join(sentences)))
    return tuple(docs)


def _wiki(rng: np.random.Generator, fact: int, bias: int, planted: bool) -> WikiSnapshot:
    if planted:
        tag = f"{_label_word('fact', fact)} {_label_word('bias', bias)}"
        return WikiSnapshot(
            exists=True,
            content=" ".join([tag] * 3),
            summary=tag,
            infobox=f"leaning: {tag}",
            categories=tuple(tag.split()),
            toc=(tag,),
        )
    if rng.random() < 0.4:
        return WikiSnapshot()
    return WikiSnapshot(
        exists=True,
        content=_neutral_text(rng, 30),
        summary=_neutral_text(rng, 8),
        infobox=f"type: {_neutral_text(rng, 2)}",
        categories=tuple(_neutral_text(rng, 3).split()),
        toc=(_neutral_text(rng, 2), _neutral_text(rng, 2)),
    )


def _twitter(
    rng: np.random.Generator, fact: int, bias: int, host: str, planted: bool
) -> TwitterProfile:
    if planted:
        base = 10.0 ** (1.0 + 0.8 * bias)
        counts = tuple(int(base * (k + 1)) for k in range(5))
        return TwitterProfile(
            exists=True,
            verified=fact == 2,
            created_year=2007 + 3 * fact,
            location="somewhere",
            profile_url=f"http://{host}",
            description=f"{_label_word('fact', fact)} {_label_word('bias', bias)}",
            counts=counts,  # type: ignore[arg-type]
        )
    if rng.random() < 0.1:
        return TwitterProfile()
    return TwitterProfile(
        exists=True,
        verified=bool(rng.random() < 0.5),
        created_year=int(rng.integers(2007, 2019)),
        location=None if rng.random() < 0.3 else "somewhere",
        profile_url=None if rng.random() < 0.2 else f"http://{host}",
        description=_neutral_text(rng, 6),
        counts=tuple(int(x) for x in rng.integers(0, 100_000, size=5)),  # type: ignore[arg-type]
    )


def _alexa_rank(rng: np.random.Generator, fact: int, planted: bool) -> int | None:
    if planted:
        return int(10 ** (2 * (_N_FACT - fact)) * rng.uniform(1.0, 1.5))
    if rng.random() < 0.1:
        return None
    return int(rng.integers(1, 1_000_000))


def build_synthetic_corpus(
    root: StrPath,
    *,
    n_media: int = 60,
    seed: int = 0,
    planted: Sequence[str] = ("wikipedia",),
    dim: int = 12,
) -> SyntheticCorpus:
    """
    Write ``corpus.csv``, ``bundles/<id>/bundle.json`` and ``embeddings.txt`` under ``root``.

    Labels are balanced: factuality cycles through its 3 grades and bias
    through its 7 grades under independent shuffles. Planted families encode
    both labels; traffic can only encode factuality.

    :param planted: families carrying signal, a subset of PLANTABLE_FAMILIES.
    :param dim: embedding dimensionality; at least 10 so each label word gets its own axis.
    """
    unknown = sorted(set(planted) - set(PLANTABLE_FAMILIES))
    if unknown:
        raise ValueError(f"cannot plant signal in {unknown}; choose from {PLANTABLE_FAMILIES}")
    if dim < _N_FACT + _N_BIAS:
        raise ValueError(f"dim must be >= {_N_FACT + _N_BIAS}, got {dim}")
    if n_media < _N_BIAS:
        raise ValueError(f"n_media must be >= {_N_BIAS}, got {n_media}")

    out = Path(root)
    rng = np.random.default_rng(seed)
    bundle_root = out / "bundles"
    embeddings = out / "embeddings.txt"
    _write_embeddings(embeddings, rng, dim)

    fact_labels = rng.permutation(np.arange(n_media) % _N_FACT)
    bias_labels = rng.permutation(np.arange(n_media) % _N_BIAS)
    records: list[MediumRecord] = []
    for i in range(n_media):
        fact, bias = int(fact_labels[i]), int(bias_labels[i])
        host = f"synth-{i:03d}.example"
        scheme = "https" if rng.random() < 0.5 else "http"
        record = MediumRecord(host, f"{scheme}://www.{host}/", fact, bias)
        records.append(record)
        save_bundle(
            bundle_root,
            EvidenceBundle(
                medium_id=host,
                articles=_articles(rng),
                wiki=_wiki(rng, fact, bias, "wikipedia" in planted),
                twitter=_twitter(rng, fact, bias, host, "twitter" in planted),
                alexa_rank=_alexa_rank(rng, fact, "traffic" in planted),
            ),
        )
    corpus = save_corpus(out / "corpus.csv", records)
    _LOG.info(
        "wrote synthetic corpus: %d media, planted=%s, dim=%d, root=%s",
        n_media,
        ",".join(planted) or "none",
        dim,
        out,
    )
    return SyntheticCorpus(corpus, bundle_root, embeddings, tuple(records))
