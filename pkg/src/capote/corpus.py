"""Debate data model and corpus ingestion.

Corpora are JSON Lines files with one debate per line; crowd annotations are
CSV.  Timestamps are RFC 3339 strings on disk and integer Unix seconds in
memory, which keeps day bucketing free of timezone drift.  Loaded values are
immutable and safe to share across parallel scorer workers.
"""

from __future__ import annotations

import csv
import html
import json
import os
import re
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import requests

from .errors import ConfigurationError, CorpusFormatError, TransportError

# The six crowd questions, in canonical column order.  The first is the
# judgment being predicted; the remaining five are the aspect questions.
QUESTIONS = ("controversy", "actors", "polarity", "openness", "time", "emotion")
ASPECTS = QUESTIONS[1:]

GUARDIAN_KEY_ENV = "CAPOTE_GUARDIAN_KEY"
DEFAULT_GUARDIAN_BASE = "https://content.guardianapis.com"

_TAG_RE = re.compile(r"<[^>]+>")


def parse_timestamp(value: str) -> int:
    """Parse an RFC 3339 timestamp into Unix seconds (UTC)."""
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError:
        raise ValueError(f"invalid RFC 3339 timestamp {value!r}") from None
    if dt.tzinfo is None:
        raise ValueError(f"timestamp {value!r} has no UTC offset")
    return int(dt.astimezone(timezone.utc).timestamp())


def format_timestamp(ts: int) -> str:
    """Render Unix seconds as an RFC 3339 UTC timestamp with seconds precision."""
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def strip_tags(text: str) -> str:
    """Drop markup tags and collapse whitespace; entities are unescaped."""
    flat = _TAG_RE.sub(" ", text)
    return re.sub(r"\s+", " ", html.unescape(flat)).strip()


@dataclass(frozen=True)
class Comment:
    """One comment on a debate; ``author`` may be empty for anonymous posts."""

    author: str
    text: str
    created_at: int
    reply_to: int | None = None


@dataclass(frozen=True)
class Debate:
    """An article plus its comment thread: the unit of scoring."""

    id: str
    title: str
    body: str
    published_at: int
    source: str
    comments: tuple[Comment, ...] = ()
    comments_public: bool = False

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("id must be a non-empty string")
        for index, comment in enumerate(self.comments):
            if comment.reply_to is not None and not 0 <= comment.reply_to < index:
                raise ValueError(
                    f"comment {index}: reply_to must index an earlier comment, "
                    f"got {comment.reply_to}"
                )


@dataclass(frozen=True)
class AnnotationSet:
    """One worker's six binary answers for one article."""

    worker_id: str
    article_id: str
    answers: Mapping[str, bool]

    def __post_init__(self):
        if not self.worker_id:
            raise ValueError("worker_id must be non-empty")
        if not self.article_id:
            raise ValueError("article_id must be non-empty")
        if set(self.answers) != set(QUESTIONS):
            missing = sorted(set(QUESTIONS) - set(self.answers))
            extra = sorted(set(self.answers) - set(QUESTIONS))
            parts = []
            if missing:
                parts.append(f"missing answers: {', '.join(missing)}")
            if extra:
                parts.append(f"unexpected answers: {', '.join(extra)}")
            raise ValueError("; ".join(parts))


@dataclass(frozen=True)
class CorpusIssue:
    """A per-line validation failure found while scanning a corpus file."""

    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


_DEBATE_REQUIRED = ("id", "title", "body", "published_at", "source")
_DEBATE_OPTIONAL = ("comments", "comments_public")
_COMMENT_REQUIRED = ("author", "text", "created_at")
_COMMENT_OPTIONAL = ("reply_to",)


def _require_str(record: Mapping, name: str, allow_empty: bool = True) -> str:
    if name not in record:
        raise ValueError(f"missing field {name}")
    value = record[name]
    if not isinstance(value, str):
        raise ValueError(f"field {name}: expected string, got {type(value).__name__}")
    if not allow_empty and not value:
        raise ValueError(f"field {name}: must be non-empty")
    return value


def _comment_from_json(record: Mapping, index: int) -> Comment:
    if not isinstance(record, Mapping):
        raise ValueError(f"comment {index}: expected object")
    unknown = set(record) - set(_COMMENT_REQUIRED) - set(_COMMENT_OPTIONAL)
    if unknown:
        raise ValueError(f"comment {index}: unknown field {sorted(unknown)[0]}")
    try:
        author = _require_str(record, "author")
        text = _require_str(record, "text")
        created_raw = _require_str(record, "created_at")
        created_at = parse_timestamp(created_raw)
    except ValueError as exc:
        raise ValueError(f"comment {index}: {exc}") from None
    reply_to = record.get("reply_to")
    if reply_to is not None and not isinstance(reply_to, int):
        raise ValueError(f"comment {index}: field reply_to: expected integer or null")
    return Comment(author=author, text=text, created_at=created_at, reply_to=reply_to)


def debate_from_json(record: Mapping) -> Debate:
    """Build a Debate from one decoded JSONL record, validating every field."""
    if not isinstance(record, Mapping):
        raise ValueError("expected a JSON object")
    unknown = set(record) - set(_DEBATE_REQUIRED) - set(_DEBATE_OPTIONAL)
    if unknown:
        raise ValueError(f"unknown field {sorted(unknown)[0]}")
    debate_id = _require_str(record, "id", allow_empty=False)
    title = _require_str(record, "title")
    body = _require_str(record, "body")
    source = _require_str(record, "source")
    published_raw = _require_str(record, "published_at")
    try:
        published_at = parse_timestamp(published_raw)
    except ValueError as exc:
        raise ValueError(f"field published_at: {exc}") from None
    comments_public = record.get("comments_public", False)
    if not isinstance(comments_public, bool):
        raise ValueError("field comments_public: expected boolean")
    raw_comments = record.get("comments", [])
    if not isinstance(raw_comments, Sequence) or isinstance(raw_comments, (str, bytes)):
        raise ValueError("field comments: expected array")
    comments = tuple(_comment_from_json(c, i) for i, c in enumerate(raw_comments))
    return Debate(
        id=debate_id,
        title=title,
        body=body,
        published_at=published_at,
        source=source,
        comments=comments,
        comments_public=comments_public,
    )


def debate_to_json(debate: Debate) -> dict:
    """Canonical JSON form of a debate (fixed key order, RFC 3339 timestamps)."""
    return {
        "id": debate.id,
        "title": debate.title,
        "body": debate.body,
        "published_at": format_timestamp(debate.published_at),
        "source": debate.source,
        "comments_public": debate.comments_public,
        "comments": [
            {
                "author": c.author,
                "text": c.text,
                "created_at": format_timestamp(c.created_at),
                "reply_to": c.reply_to,
            }
            for c in debate.comments
        ],
    }


def dumps_debate(debate: Debate) -> str:
    return json.dumps(debate_to_json(debate), ensure_ascii=False, separators=(",", ":"))


def scan_corpus(path: str | Path) -> tuple[list[Debate], list[CorpusIssue]]:
    """Read a JSONL corpus, collecting every per-line validation failure."""
    debates: list[Debate] = []
    issues: list[CorpusIssue] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                issues.append(CorpusIssue(line_no, f"invalid JSON ({exc.msg})"))
                continue
            try:
                debate = debate_from_json(record)
            except ValueError as exc:
                issues.append(CorpusIssue(line_no, str(exc)))
                continue
            if debate.id in seen:
                issues.append(
                    CorpusIssue(
                        line_no,
                        f"duplicate id '{debate.id}' (first seen on line {seen[debate.id]})",
                    )
                )
                continue
            seen[debate.id] = line_no
            debates.append(debate)
    return debates, issues


def load_corpus(path: str | Path) -> list[Debate]:
    """Load a JSONL corpus, raising on the first malformed line."""
    debates, issues = scan_corpus(path)
    if issues:
        raise CorpusFormatError(str(issues[0]))
    return debates


def dump_corpus(debates: Iterable[Debate], path: str | Path) -> None:
    """Write debates as canonical JSON Lines (UTF-8, LF)."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for debate in debates:
            handle.write(dumps_debate(debate))
            handle.write("\n")


ANNOTATION_HEADER = ("worker_id", "article_id", *QUESTIONS)


def load_annotations(path: str | Path) -> list[AnnotationSet]:
    """Load a crowd-annotation CSV; one row per (worker, article) pair."""
    annotations: list[AnnotationSet] = []
    seen: set[tuple[str, str]] = set()
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusFormatError("annotation file is empty (missing header)") from None
        if tuple(header) != ANNOTATION_HEADER:
            raise CorpusFormatError(
                f"bad header: expected {','.join(ANNOTATION_HEADER)}, got {','.join(header)}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(ANNOTATION_HEADER):
                raise CorpusFormatError(
                    f"row {row_no}: expected {len(ANNOTATION_HEADER)} cells, got {len(row)}"
                )
            worker_id, article_id = row[0], row[1]
            answers = {}
            for question, cell in zip(QUESTIONS, row[2:]):
                if cell not in ("0", "1"):
                    raise CorpusFormatError(
                        f"row {row_no}: answer '{question}' must be 0 or 1, got {cell!r}"
                    )
                answers[question] = cell == "1"
            key = (worker_id, article_id)
            if key in seen:
                raise CorpusFormatError(
                    f"row {row_no}: duplicate annotation for worker '{worker_id}' "
                    f"and article '{article_id}'"
                )
            seen.add(key)
            try:
                annotations.append(
                    AnnotationSet(worker_id=worker_id, article_id=article_id, answers=answers)
                )
            except ValueError as exc:
                raise CorpusFormatError(f"row {row_no}: {exc}") from None
    return annotations


def _format_date(value) -> str:
    if isinstance(value, datetime):
        return value.astimezone(timezone.utc).strftime("%Y-%m-%d")
    if isinstance(value, (int, float)):
        return datetime.fromtimestamp(value, tz=timezone.utc).strftime("%Y-%m-%d")
    raise ValueError(f"date_range entries must be datetimes or Unix seconds, got {value!r}")


def fetch_articles(
    query: str,
    date_range: tuple,
    max_results: int,
    *,
    api_key: str | None = None,
    base_url: str = DEFAULT_GUARDIAN_BASE,
    session=None,
) -> list[Debate]:
    """Fetch articles from a Guardian-compatible search API as comment-less debates.

    The key is read from the ``CAPOTE_GUARDIAN_KEY`` environment variable when
    not passed explicitly.  ``max_results = 0`` short-circuits without any
    network activity.  Records missing a required field are skipped with a
    warning rather than failing the whole fetch.
    """
    if max_results < 0:
        raise ValueError(f"max_results must be >= 0, got {max_results}")
    if max_results == 0:
        return []
    key = api_key or os.environ.get(GUARDIAN_KEY_ENV)
    if not key:
        raise ConfigurationError(
            f"no API key: pass api_key or set the {GUARDIAN_KEY_ENV} environment variable"
        )
    if session is None:
        session = requests.Session()
    start, end = date_range
    params = {
        "q": query,
        "from-date": _format_date(start),
        "to-date": _format_date(end),
        "api-key": key,
        "show-fields": "body",
        "page-size": min(max_results, 200),
    }
    response = session.get(base_url.rstrip("/") + "/search", params=params, timeout=30)
    if not 200 <= response.status_code < 300:
        raise TransportError(
            f"search request failed with HTTP {response.status_code}",
            status=response.status_code,
        )
    payload = response.json()
    results = payload.get("response", {}).get("results", [])
    debates: list[Debate] = []
    for item in results:
        if len(debates) >= max_results:
            break
        try:
            debates.append(
                Debate(
                    id=str(item["id"]),
                    title=str(item["webTitle"]),
                    body=strip_tags(str(item["fields"]["body"])),
                    published_at=parse_timestamp(str(item["webPublicationDate"])),
                    source="theguardian",
                    comments=(),
                    comments_public=False,
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            warnings.warn(f"skipping unmappable record: {exc}", stacklevel=2)
    return debates
