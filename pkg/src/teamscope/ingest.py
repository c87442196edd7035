"""Parsing, cleaning and author canonicalization for bibliographic records."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field, replace

RECORD_KINDS = frozenset(
    {"journal_paper", "conference_paper", "patent", "thesis", "monograph"}
)

# Kinds subject to the single-author drop rule.  Theses keep their single
# author (the supervisor supplies the co-author edge) and monographs are
# legitimately single-authored.
_SINGLE_AUTHOR_DROP_KINDS = frozenset({"journal_paper", "conference_paper", "patent"})

_WS_RE = re.compile(r"\s+")


class ParseError(ValueError):
    """Malformed input row.  Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AliasMapError(ValueError):
    """Invalid alias map configuration (cycle or empty target)."""


@dataclass(frozen=True)
class AuthorRef:
    """One author mention as it appears on a record."""

    raw_name: str
    affiliation: str | None = None

    def __post_init__(self) -> None:
        if not self.raw_name.strip():
            raise ValueError("author name is empty")


@dataclass
class PublicationRecord:
    """A single paper, patent, thesis or monograph.

    ``author_ids`` (and ``supervisor_id``) are filled in by
    :func:`canonicalize_authors`; they are ``None`` on freshly parsed records.
    """

    id: str
    kind: str
    title: str
    authors: list[AuthorRef]
    abstract: str | None = None
    supervisor: AuthorRef | None = None
    year: int | None = None
    venue: str | None = None
    citation_count: int | None = None
    project_id: str | None = None
    gold_keywords: list[str] | None = None
    discipline: str | None = None
    author_ids: list[str] | None = None
    supervisor_id: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in RECORD_KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")
        if self.kind == "thesis" and len(self.authors) != 1:
            raise ValueError(f"thesis record {self.id!r} must have exactly one author")
        if self.supervisor is not None and self.kind != "thesis":
            raise ValueError(f"record {self.id!r}: supervisor is only valid on theses")
        if self.citation_count is not None and self.citation_count < 0:
            raise ValueError(f"record {self.id!r}: negative citation_count")


@dataclass
class DroppedRecord:
    """A record removed by cleaning, with the reason."""

    record: PublicationRecord
    reason: str


@dataclass
class Corpus:
    """Cleaned, canonicalized records ready for graph/topic extraction."""

    records: list[PublicationRecord]
    alias_map: dict[str, str] = field(default_factory=dict)


def normalize_name(raw: str) -> str:
    """Trim, collapse internal whitespace and case-fold an author name."""
    return _WS_RE.sub(" ", raw.strip()).casefold()


def _author_from_value(value, line: int | None) -> AuthorRef:
    if isinstance(value, str):
        name = value
        affiliation = None
    elif isinstance(value, dict):
        name = value.get("raw_name", "")
        affiliation = value.get("affiliation")
    else:
        raise ParseError(f"author entry must be a string or object, got {value!r}", line)
    if not isinstance(name, str) or not name.strip():
        raise ParseError("author name is empty", line)
    return AuthorRef(raw_name=name, affiliation=affiliation)


def _record_from_mapping(
    obj: dict, line: int | None, author_delimiter: str | None
) -> PublicationRecord:
    for key in ("id", "kind", "title", "authors"):
        if obj.get(key) in (None, ""):
            raise ParseError(f"missing required field {key!r}", line)

    raw_authors = obj["authors"]
    if isinstance(raw_authors, str):
        if author_delimiter is None:
            raise ParseError("authors must be a list", line)
        parts = [p for p in raw_authors.split(author_delimiter) if p.strip()]
        authors = [_author_from_value(p, line) for p in parts]
    elif isinstance(raw_authors, list):
        authors = [_author_from_value(a, line) for a in raw_authors]
    else:
        raise ParseError(f"authors must be a list, got {raw_authors!r}", line)

    supervisor = obj.get("supervisor")
    if supervisor not in (None, ""):
        supervisor = _author_from_value(supervisor, line)
    else:
        supervisor = None

    gold = obj.get("gold_keywords")
    if isinstance(gold, str):
        gold = [g.strip() for g in gold.split(author_delimiter or ";") if g.strip()] or None
    elif gold is not None and not isinstance(gold, list):
        raise ParseError(f"gold_keywords must be a list, got {gold!r}", line)

    def _opt_int(key: str) -> int | None:
        value = obj.get(key)
        if value in (None, ""):
            return None
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ParseError(f"field {key!r} must be an integer, got {value!r}", line) from None

    try:
        return PublicationRecord(
            id=str(obj["id"]),
            kind=str(obj["kind"]),
            title=str(obj["title"]),
            authors=authors,
            abstract=obj.get("abstract") or None,
            supervisor=supervisor,
            year=_opt_int("year"),
            venue=obj.get("venue") or None,
            citation_count=_opt_int("citation_count"),
            project_id=str(obj["project_id"]) if obj.get("project_id") not in (None, "") else None,
            gold_keywords=[str(g) for g in gold] if gold else None,
            discipline=obj.get("discipline") or None,
        )
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


def parse_records(
    source,
    format: str = "json_lines",
    author_delimiter: str = ";",
) -> list[PublicationRecord]:
    """Parse raw bibliographic records from a byte stream, bytes or str.

    ``format`` is ``"json_lines"`` (one JSON object per line) or ``"csv"``
    (header row required; the authors cell is split on ``author_delimiter``).
    Raises :class:`ParseError` with the offending line number on malformed
    rows, unknown kinds and duplicate ids.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    if format == "json_lines":
        records = _parse_json_lines(text)
    elif format == "csv":
        records = _parse_csv(text, author_delimiter)
    else:
        raise ValueError(f"unknown input format {format!r}")

    seen: set[str] = set()
    for record in records:
        if record.id in seen:
            raise ParseError(f"duplicate record id {record.id!r}")
        seen.add(record.id)
    return records


def _parse_json_lines(text: str) -> list[PublicationRecord]:
    records = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg})", line_no) from None
        if not isinstance(obj, dict):
            raise ParseError("record must be a JSON object", line_no)
        records.append(_record_from_mapping(obj, line_no, author_delimiter=None))
    return records


def _parse_csv(text: str, author_delimiter: str) -> list[PublicationRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return []
    missing = {"id", "kind", "title", "authors"} - set(reader.fieldnames)
    if missing:
        raise ParseError(f"missing required columns: {', '.join(sorted(missing))}", 1)
    records = []
    # DictReader rows start under the header, so data line 1 is file line 2.
    for line_no, row in enumerate(reader, start=2):
        obj = {k: v for k, v in row.items() if k is not None and v not in (None, "")}
        records.append(_record_from_mapping(obj, line_no, author_delimiter))
    return records


def clean_records(
    records: list[PublicationRecord],
) -> tuple[list[PublicationRecord], list[DroppedRecord]]:
    """Drop invalid records: no-author rows, and single-author papers/patents.

    Returns ``(kept, dropped)`` with ``len(kept) + len(dropped) == len(records)``.
    Cleaning is total and idempotent.
    """
    kept: list[PublicationRecord] = []
    dropped: list[DroppedRecord] = []
    for record in records:
        if not record.authors:
            dropped.append(DroppedRecord(record, "no-author"))
        elif len(record.authors) == 1 and record.kind in _SINGLE_AUTHOR_DROP_KINDS:
            dropped.append(DroppedRecord(record, "single-author"))
        else:
            kept.append(record)
    return kept, dropped


def resolve_alias_map(alias_map: dict[str, str]) -> dict[str, str]:
    """Normalize alias keys/values and resolve chains to their final target.

    Raises :class:`AliasMapError` on cycles or aliases mapping to an empty name.
    """
    normalized: dict[str, str] = {}
    for raw_key, raw_value in alias_map.items():
        key = normalize_name(raw_key)
        value = normalize_name(raw_value) if isinstance(raw_value, str) else ""
        if not value:
            raise AliasMapError(f"alias {raw_key!r} maps to an empty name")
        if not key:
            raise AliasMapError("alias map contains an empty key")
        normalized[key] = value

    resolved: dict[str, str] = {}
    for start in normalized:
        seen = [start]
        current = normalized[start]
        while current in normalized and current != seen[-1]:
            if current in seen:
                raise AliasMapError(f"alias cycle involving {start!r}")
            seen.append(current)
            current = normalized[current]
        resolved[start] = current
    return resolved


def canonicalize_authors(
    records: list[PublicationRecord],
    alias_map: dict[str, str] | None = None,
    use_affiliation: bool = False,
) -> list[PublicationRecord]:
    """Assign deterministic canonical author ids to every record.

    Names are trimmed, whitespace-collapsed and case-folded, then the alias
    map (applied after normalization) rewrites them.  With ``use_affiliation``
    the normalized affiliation is appended as a ``|``-separated discriminator.
    """
    resolved = resolve_alias_map(alias_map or {})

    def to_id(ref: AuthorRef) -> str:
        name = normalize_name(ref.raw_name)
        name = resolved.get(name, name)
        if use_affiliation and ref.affiliation and ref.affiliation.strip():
            return f"{name}|{normalize_name(ref.affiliation)}"
        return name

    out = []
    for record in records:
        out.append(
            replace(
                record,
                author_ids=[to_id(a) for a in record.authors],
                supervisor_id=to_id(record.supervisor) if record.supervisor else None,
            )
        )
    return out


def record_to_dict(record: PublicationRecord) -> dict:
    """JSON-ready mapping for one record (omits empty optional fields)."""
    out: dict = {
        "id": record.id,
        "kind": record.kind,
        "title": record.title,
        "authors": [
            {"raw_name": a.raw_name, **({"affiliation": a.affiliation} if a.affiliation else {})}
            for a in record.authors
        ],
    }
    if record.abstract:
        out["abstract"] = record.abstract
    if record.supervisor:
        out["supervisor"] = {"raw_name": record.supervisor.raw_name}
        if record.supervisor.affiliation:
            out["supervisor"]["affiliation"] = record.supervisor.affiliation
    for key in ("year", "venue", "citation_count", "project_id", "gold_keywords", "discipline"):
        value = getattr(record, key)
        if value is not None:
            out[key] = value
    if record.author_ids is not None:
        out["author_ids"] = record.author_ids
    if record.supervisor_id is not None:
        out["supervisor_id"] = record.supervisor_id
    return out


def record_from_dict(obj: dict) -> PublicationRecord:
    """Inverse of :func:`record_to_dict`."""
    record = _record_from_mapping(obj, line=None, author_delimiter=None)
    record.author_ids = list(obj["author_ids"]) if "author_ids" in obj else None
    record.supervisor_id = obj.get("supervisor_id")
    return record


def corpus_to_jsonl(records: list[PublicationRecord]) -> str:
    """Serialize records as JSON-lines (deterministic key order)."""
    return "".join(
        json.dumps(record_to_dict(r), ensure_ascii=False, sort_keys=True) + "\n" for r in records
    )


def corpus_from_jsonl(text: str) -> list[PublicationRecord]:
    """Load records written by :func:`corpus_to_jsonl`."""
    out = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg})", line_no) from None
        out.append(record_from_dict(obj))
    return out
