"""
Corpus and evidence-bundle I/O.

``corpus.csv`` holds one labelled medium per row; each medium's raw evidence
lives in ``<bundle_root>/<medium_id>/bundle.json``.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Mapping, Sequence
from datetime import date
from pathlib import Path
from typing import Any, Final
from urllib.parse import urlsplit

import numpy as np

from mstair.mediaprofile.base.errors import (
    BundleNotFoundError,
    BundleValidationError,
    CorpusParseError,
    CorpusValidationError,
)
from mstair.mediaprofile.base.fs_helpers import StrPath, fs_atomic_write_text
from mstair.mediaprofile.corpus.labels import (
    BIAS7_LABELS,
    FACTUALITY_LABELS,
    encode_bias7,
    encode_factuality,
    map_bias_7_to_3,
)
from mstair.mediaprofile.corpus.records import (
    COUNT_FIELDS,
    ArticleDoc,
    EvidenceBundle,
    MediumRecord,
    TwitterProfile,
    WikiSnapshot,
)
from mstair.mediaprofile.xlogging.logger_factory import create_logger


__all__ = [
    "BUNDLE_FILENAME",
    "CORPUS_HEADER",
    "bundle_path",
    "dump_bundle",
    "labels_for_task",
    "load_bundle",
    "load_bundles",
    "load_corpus",
    "normalize_medium_id",
    "parse_bundle",
    "save_bundle",
    "save_corpus",
]

_LOG = create_logger(__name__)

CORPUS_HEADER: Final[tuple[str, ...]] = ("medium_id", "url", "factuality", "bias7")
BUNDLE_FILENAME: Final[str] = "bundle.json"


def normalize_medium_id(url_or_host: str) -> str:
    """
    Reduce a URL or bare host to the medium key: lowercase host without
    scheme, ``www.``, port, path or trailing dot.

    >>> normalize_medium_id("http://www.FoxNews.com/")
    'foxnews.com'

    :raises ValueError: if no host can be found.
    """
    text = url_or_host.strip()
    if "//" not in text:
        text = "//" + text
    try:
        host = urlsplit(text).hostname
    except ValueError as exc:
        raise ValueError(f"cannot parse host from {url_or_host!r}: {exc}") from exc
    host = (host or "").rstrip(".")
    host = host.removeprefix("www.")
    if not host:
        raise ValueError(f"no host in {url_or_host!r}")
    return host


# ---------- corpus.csv ----------


def load_corpus(path: StrPath) -> list[MediumRecord]:
    """
    Load ``corpus.csv``.

    :raises CorpusParseError: bad header or a row with the wrong field count (1-based line).
    :raises CorpusValidationError: duplicate medium id or unknown label string.
    """
    corpus_path = Path(path)
    records: list[MediumRecord] = []
    seen: dict[str, int] = {}
    with corpus_path.open(encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CORPUS_HEADER:
            raise CorpusParseError(
                f"expected header {','.join(CORPUS_HEADER)}, got {','.join(header or [])!r}",
                path=corpus_path,
                line=1,
            )
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(CORPUS_HEADER):
                raise CorpusParseError(
                    f"expected {len(CORPUS_HEADER)} fields, got {len(row)}",
                    path=corpus_path,
                    line=line,
                )
            raw_id, url, fact_txt, bias_txt = (cell.strip() for cell in row)
            try:
                medium_id = normalize_medium_id(raw_id)
            except ValueError as exc:
                raise CorpusParseError(str(exc), path=corpus_path, line=line) from exc
            try:
                factuality = encode_factuality(fact_txt)
                bias7 = encode_bias7(bias_txt)
            except ValueError as exc:
                raise CorpusValidationError(f"{corpus_path}:{line}: {exc}") from exc
            if medium_id in seen:
                raise CorpusValidationError(
                    f"{corpus_path}:{line}: duplicate medium_id {medium_id!r} "
                    f"(first seen on line {seen[medium_id]})"
                )
            seen[medium_id] = line
            records.append(MediumRecord(medium_id, url, factuality, bias7))
    _LOG.debug("loaded %d media from %s", len(records), corpus_path)
    return records


def save_corpus(path: StrPath, records: Iterable[MediumRecord]) -> Path:
    """Write records back in canonical label spelling."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CORPUS_HEADER)
    writer.writerows(
        (r.medium_id, r.url, FACTUALITY_LABELS[r.factuality], BIAS7_LABELS[r.bias7])
        for r in records
    )
    return fs_atomic_write_text(path, buf.getvalue())


def labels_for_task(records: Sequence[MediumRecord], task: str) -> np.ndarray:
    """Ordinal label vector for ``factuality``, ``bias7`` or ``bias3`` (mapped from bias7)."""
    if task == "factuality":
        values = [r.factuality for r in records]
    elif task == "bias7":
        values = [r.bias7 for r in records]
    elif task == "bias3":
        values = [map_bias_7_to_3(r.bias7) for r in records]
    else:
        raise ValueError(f"unknown task {task!r}")
    return np.asarray(values, dtype=np.int64)


# ---------- bundle.json ----------


class _Validator:
    """Walks a decoded bundle, raising BundleValidationError with a JSON path."""

    def __init__(self, path: Path) -> None:
        self.path = path

    def fail(self, json_path: str, message: str) -> BundleValidationError:
        return BundleValidationError(message, json_path=json_path, path=self.path)

    def obj(self, value: Any, json_path: str) -> Mapping[str, Any]:
        if not isinstance(value, dict):
            raise self.fail(json_path, f"expected an object, got {type(value).__name__}")
        return value

    def string(self, value: Any, json_path: str) -> str:
        if not isinstance(value, str):
            raise self.fail(json_path, f"expected a string, got {type(value).__name__}")
        return value

    def opt_string(self, value: Any, json_path: str) -> str | None:
        return None if value is None else self.string(value, json_path)

    def flag(self, value: Any, json_path: str) -> bool:
        if not isinstance(value, bool):
            raise self.fail(json_path, f"expected a boolean, got {type(value).__name__}")
        return value

    def integer(self, value: Any, json_path: str, *, minimum: int | None = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(json_path, f"expected an integer, got {type(value).__name__}")
        if minimum is not None and value < minimum:
            raise self.fail(json_path, f"must be >= {minimum}, got {value}")
        return value

    def strings(self, value: Any, json_path: str) -> tuple[str, ...]:
        if not isinstance(value, list):
            raise self.fail(json_path, f"expected a list, got {type(value).__name__}")
        return tuple(self.string(v, f"{json_path}[{i}]") for i, v in enumerate(value))


def _parse_article(v: _Validator, raw: Any, json_path: str) -> ArticleDoc:
    art = v.obj(raw, json_path)
    published: date | None = None
    if (stamp := art.get("published_at")) is not None:
        text = v.string(stamp, f"{json_path}.published_at")
        try:
            published = date.fromisoformat(text)
        except ValueError:
            raise v.fail(f"{json_path}.published_at", f"expected YYYY-MM-DD, got {text!r}") from None
    return ArticleDoc(
        title=v.string(art.get("title", ""), f"{json_path}.title"),
        body=v.string(art.get("body", ""), f"{json_path}.body"),
        published_at=published,
    )


def _parse_wiki(v: _Validator, raw: Any) -> WikiSnapshot:
    if raw is None:
        return WikiSnapshot()
    wiki = v.obj(raw, "$.wiki")
    return WikiSnapshot(
        exists=True,
        content=v.string(wiki.get("content", ""), "$.wiki.content"),
        summary=v.string(wiki.get("summary", ""), "$.wiki.summary"),
        infobox=v.string(wiki.get("infobox", ""), "$.wiki.infobox"),
        categories=v.strings(wiki.get("categories", []), "$.wiki.categories"),
        toc=v.strings(wiki.get("toc", []), "$.wiki.toc"),
    )


def _parse_twitter(v: _Validator, raw: Any) -> TwitterProfile:
    if raw is None:
        return TwitterProfile()
    tw = v.obj(raw, "$.twitter")
    counts_raw = v.obj(tw.get("counts", {}), "$.twitter.counts")
    unknown = sorted(set(counts_raw) - set(COUNT_FIELDS))
    if unknown:
        raise v.fail(f"$.twitter.counts.{unknown[0]}", "unknown count field")
    counts = tuple(
        v.integer(counts_raw.get(name, 0), f"$.twitter.counts.{name}", minimum=0)
        for name in COUNT_FIELDS
    )
    created = tw.get("created_year")
    return TwitterProfile(
        exists=True,
        verified=v.flag(tw.get("verified", False), "$.twitter.verified"),
        created_year=None if created is None else v.integer(created, "$.twitter.created_year"),
        location=v.opt_string(tw.get("location"), "$.twitter.location"),
        profile_url=v.opt_string(tw.get("profile_url"), "$.twitter.profile_url"),
        description=v.string(tw.get("description", ""), "$.twitter.description"),
        counts=counts,  # type: ignore[arg-type]
    )


def parse_bundle(data: Any, *, path: Path, expected_id: str | None = None) -> EvidenceBundle:
    """Validate a decoded ``bundle.json`` document."""
    v = _Validator(path)
    doc = v.obj(data, "$")
    if "medium_id" not in doc:
        raise v.fail("$.medium_id", "required key is missing")
    medium_id = v.string(doc["medium_id"], "$.medium_id")
    if expected_id is not None and medium_id != expected_id:
        raise v.fail("$.medium_id", f"expected {expected_id!r}, got {medium_id!r}")
    articles_raw = doc.get("articles", [])
    if not isinstance(articles_raw, list):
        raise v.fail("$.articles", f"expected a list, got {type(articles_raw).__name__}")
    rank = doc.get("alexa_rank")
    return EvidenceBundle(
        medium_id=medium_id,
        articles=tuple(_parse_article(v, a, f"$.articles[{i}]") for i, a in enumerate(articles_raw)),
        wiki=_parse_wiki(v, doc.get("wiki")),
        twitter=_parse_twitter(v, doc.get("twitter")),
        alexa_rank=None if rank is None else v.integer(rank, "$.alexa_rank", minimum=1),
    )


def bundle_path(root: StrPath, medium_id: str) -> Path:
    return Path(root) / medium_id / BUNDLE_FILENAME


def load_bundle(root: StrPath, medium_id: str) -> EvidenceBundle:
    """
    Load and validate ``<root>/<medium_id>/bundle.json``.

    :raises BundleNotFoundError: the file does not exist.
    :raises BundleValidationError: invalid JSON or a schema violation, with its JSON path.
    """
    path = bundle_path(root, medium_id)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise BundleNotFoundError(medium_id, path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleValidationError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            json_path="$",
            path=path,
        ) from exc
    return parse_bundle(data, path=path, expected_id=medium_id)


def load_bundles(
    root: StrPath, records: Sequence[MediumRecord]
) -> tuple[dict[str, EvidenceBundle], list[str]]:
    """
    Load the bundle of every record; missing ones are reported, not raised.

    :return: ``(bundles by medium id, skipped medium ids in record order)``.
    """
    bundles: dict[str, EvidenceBundle] = {}
    skipped: list[str] = []
    for record in records:
        try:
            bundles[record.medium_id] = load_bundle(root, record.medium_id)
        except BundleNotFoundError as exc:
            _LOG.warning("skipping %s: %s", record.medium_id, exc)
            skipped.append(record.medium_id)
    return bundles, skipped


def dump_bundle(bundle: EvidenceBundle) -> dict[str, Any]:
    """Inverse of :func:`parse_bundle`; absent sections are omitted."""
    out: dict[str, Any] = {"medium_id": bundle.medium_id}
    articles: list[dict[str, Any]] = []
    for art in bundle.articles:
        item: dict[str, Any] = {"title": art.title, "body": art.body}
        if art.published_at is not None:
            item["published_at"] = art.published_at.isoformat()
        articles.append(item)
    out["articles"] = articles
    if bundle.wiki.exists:
        w = bundle.wiki
        out["wiki"] = {
            "content": w.content,
            "summary": w.summary,
            "infobox": w.infobox,
            "categories": list(w.categories),
            "toc": list(w.toc),
        }
    if bundle.twitter.exists:
        t = bundle.twitter
        out["twitter"] = {
            "verified": t.verified,
            "created_year": t.created_year,
            "location": t.location,
            "profile_url": t.profile_url,
            "description": t.description,
            "counts": dict(zip(COUNT_FIELDS, t.counts, strict=True)),
        }
    if bundle.alexa_rank is not None:
        out["alexa_rank"] = bundle.alexa_rank
    return out


def save_bundle(root: StrPath, bundle: EvidenceBundle) -> Path:
    text = json.dumps(dump_bundle(bundle), ensure_ascii=False, indent=2, sort_keys=True)
    return fs_atomic_write_text(bundle_path(root, bundle.medium_id), text + "\n")
