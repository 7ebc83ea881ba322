"""Persistent catalog of classified systems.

Registries are immutable values: ``add_record`` and ``migrate`` return new
registries.  On disk a registry is one self-describing JSON document that
embeds its full factor schema; classifications are stored as canonical
notation strings so the file can be audited by eye.
"""
from __future__ import annotations

import csv
import json
import re
import unicodedata
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, TextIO

from ._io import atomic_write_text
from .designation import Designation, from_choices
from .errors import (
    DesignationError,
    DuplicateId,
    InvalidRationaleKey,
    IoFailure,
    MalformedDocument,
    NotAnExtension,
    SchemaMismatch,
)
from .notation import Style, format, parse, pattern_from_wildcards
from .pattern import CategoryPattern, cardinality, matches, subsumes
from .schema import FactorSchema, is_extension_of

FORMAT_NAME = "aidesig-registry"
FORMAT_VERSION = 1

Classification = Designation | CategoryPattern


def utc_now() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def slugify(name: str) -> str:
    """Lowercase ASCII slug used as the default record id."""
    text = unicodedata.normalize("NFKD", name).encode("ascii", "ignore").decode()
    slug = re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")
    return slug or "system"


@dataclass(frozen=True)
class SystemRecord:
    record_id: str
    display_name: str
    classification: Classification
    rationales: Mapping[int, str] = field(default_factory=dict)
    created_at: str = ""
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        object.__setattr__(self, "rationales", dict(sorted(self.rationales.items())))
        if not self.record_id:
            raise MalformedDocument("record_id must be non-empty")
        if not isinstance(self.classification, (Designation, CategoryPattern)):
            raise TypeError("classification must be a Designation or CategoryPattern")

    @property
    def schema_version(self) -> str:
        return self.classification.schema.version_id

    @property
    def schema(self) -> FactorSchema:
        return self.classification.schema

    @property
    def is_designated(self) -> bool:
        return isinstance(self.classification, Designation)

    def classification_text(self) -> str:
        if self.is_designated:
            return format(self.classification, Style.SYSTEM_NAME)
        return format(self.classification, Style.BITSTRING)


def validate_rationales(schema: FactorSchema, rationales: Mapping[int, str]) -> None:
    for key in rationales:
        if not isinstance(key, int) or not schema.has_position(key):
            raise InvalidRationaleKey(
                f"rationale key {key!r} is not a factor position of {schema.version_id!r}"
            )


@dataclass(frozen=True)
class Registry:
    schema: FactorSchema
    records: Mapping[str, SystemRecord] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "records", dict(self.records))
        for rec in self.records.values():
            _check_record(self.schema, rec)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records.values())

    def __getitem__(self, record_id: str) -> SystemRecord:
        return self.records[record_id]


def _check_record(schema: FactorSchema, rec: SystemRecord) -> None:
    if rec.schema != schema:
        raise SchemaMismatch(
            f"record {rec.record_id!r} uses schema {rec.schema_version!r}, "
            f"registry uses {schema.version_id!r}"
        )
    validate_rationales(schema, rec.rationales)


def add_record(reg: Registry, rec: SystemRecord) -> Registry:
    if rec.record_id in reg.records:
        raise DuplicateId(f"record id {rec.record_id!r} already present")
    _check_record(reg.schema, rec)
    return Registry(reg.schema, {**reg.records, rec.record_id: rec})


def classify(
    schema: FactorSchema,
    answers: Mapping[int, int] | Iterable[tuple[int, int]],
    rationales: Mapping[int, str] | None,
    display_name: str,
    *,
    record_id: str | None = None,
    created_at: str | None = None,
    tags: Iterable[str] = (),
) -> SystemRecord:
    """Turn a complete set of human answers into a designated record."""
    rationales = dict(rationales or {})
    validate_rationales(schema, rationales)
    d = from_choices(schema, answers)
    return SystemRecord(
        record_id=record_id or slugify(display_name),
        display_name=display_name,
        classification=d,
        rationales=rationales,
        created_at=created_at or utc_now(),
        tags=tuple(tags),
    )


def _record_matches(p: CategoryPattern, rec: SystemRecord) -> bool:
    if rec.is_designated:
        return matches(p, rec.classification)
    return subsumes(p, rec.classification)


def _require_query_schema(reg: Registry, p: CategoryPattern) -> None:
    if p.schema != reg.schema:
        raise SchemaMismatch(
            f"query uses schema {p.schema_version!r}, registry uses {reg.schema.version_id!r}"
        )


def query(reg: Registry, p: CategoryPattern) -> list[SystemRecord]:
    """Records inside category ``p``.

    A pattern-classified record counts only when its whole category lies
    inside ``p``.
    """
    _require_query_schema(reg, p)
    return [rec for rec in reg if _record_matches(p, rec)]


@dataclass(frozen=True)
class CategoryCount:
    pattern: CategoryPattern
    designated: int
    patterned: int
    cardinality: int

    @property
    def total(self) -> int:
        return self.designated + self.patterned


def population_report(reg: Registry, categories: Iterable[CategoryPattern]) -> list[CategoryCount]:
    out = []
    for p in categories:
        _require_query_schema(reg, p)
        hits = [rec for rec in reg if _record_matches(p, rec)]
        designated = sum(1 for rec in hits if rec.is_designated)
        out.append(CategoryCount(p, designated, len(hits) - designated, cardinality(p)))
    return out


def migrate(reg: Registry, new_schema: FactorSchema) -> Registry:
    """Re-read every record under ``new_schema``.

    Designations keep their decimal value, so new factors read as choice 0.
    Patterns keep their cells; new factors stay unspecified.
    """
    if not is_extension_of(new_schema, reg.schema):
        raise NotAnExtension(
            f"schema {new_schema.version_id!r} does not extend {reg.schema.version_id!r}"
        )
    records = {}
    for rid, rec in reg.records.items():
        c = rec.classification
        if isinstance(c, Designation):
            moved: Classification = Designation(c.value, new_schema)
        else:
            moved = CategoryPattern(new_schema, c.mask, c.bits)
        records[rid] = SystemRecord(
            rec.record_id, rec.display_name, moved, rec.rationales, rec.created_at, rec.tags
        )
    return Registry(new_schema, records)


# -- persistence ---------------------------------------------------------


def to_document(reg: Registry) -> dict[str, Any]:
    return {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "schema": reg.schema.to_dict(),
        "records": [
            {
                "record_id": rec.record_id,
                "display_name": rec.display_name,
                "classification": {
                    "kind": "designation" if rec.is_designated else "pattern",
                    "text": rec.classification_text(),
                },
                "rationales": {str(k): v for k, v in rec.rationales.items()},
                "created_at": rec.created_at,
                "tags": list(rec.tags),
            }
            for rec in reg
        ],
    }


def _read_classification(schema: FactorSchema, doc: Any, rid: str) -> Classification:
    if not isinstance(doc, dict) or doc.get("kind") not in ("designation", "pattern"):
        raise MalformedDocument(f"record {rid!r}: classification needs kind designation|pattern")
    text = doc.get("text")
    if not isinstance(text, str):
        raise MalformedDocument(f"record {rid!r}: classification text missing")
    try:
        if doc["kind"] == "pattern":
            return pattern_from_wildcards(schema, text.strip())
        value = parse(schema, text).value
    except DesignationError as exc:
        raise SchemaMismatch(
            f"record {rid!r}: {text!r} does not fit schema {schema.version_id!r} ({exc})"
        ) from None
    if not isinstance(value, Designation):
        raise MalformedDocument(f"record {rid!r}: {text!r} is not a full designation")
    return value


def from_document(doc: Any, schema: FactorSchema | None = None) -> Registry:
    """Build a registry from a parsed document.

    When ``schema`` is given it must match the embedded one exactly; a file
    written under another schema has to be migrated explicitly.
    """
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise MalformedDocument(f"not an {FORMAT_NAME} document")
    if doc.get("format_version") != FORMAT_VERSION:
        raise MalformedDocument(f"unsupported format_version {doc.get('format_version')!r}")
    if "schema" not in doc:
        raise MalformedDocument("registry document has no schema block")
    embedded = FactorSchema.from_dict(doc["schema"])
    if schema is not None and schema != embedded:
        raise SchemaMismatch(
            f"registry was written under {embedded.version_id!r}, requested "
            f"{schema.version_id!r}; migrate it explicitly"
        )
    raw_records = doc.get("records", [])
    if not isinstance(raw_records, list):
        raise MalformedDocument("'records' must be a list")
    reg = Registry(embedded)
    for raw in raw_records:
        if not isinstance(raw, dict) or not raw.get("record_id"):
            raise MalformedDocument("each record needs a record_id")
        rid = raw["record_id"]
        try:
            rationales = {int(k): v for k, v in (raw.get("rationales") or {}).items()}
        except (ValueError, AttributeError):
            raise InvalidRationaleKey(f"record {rid!r}: rationale keys must be positions") from None
        rec = SystemRecord(
            record_id=rid,
            display_name=raw.get("display_name", rid),
            classification=_read_classification(embedded, raw.get("classification"), rid),
            rationales=rationales,
            created_at=raw.get("created_at", ""),
            tags=tuple(raw.get("tags", ())),
        )
        reg = add_record(reg, rec)
    return reg


def dumps(reg: Registry) -> str:
    return json.dumps(to_document(reg), indent=2, ensure_ascii=False) + "\n"


def save(reg: Registry, destination: str | Path) -> None:
    atomic_write_text(Path(destination), dumps(reg))


def load(source: str | Path, schema: FactorSchema | None = None) -> Registry:
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read registry {source}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"registry {source} is not JSON: {exc}") from None
    return from_document(doc, schema)


# -- CSV ------------------------------------------------------------------


def import_csv(
    reg: Registry, stream: TextIO, *, created_at: str | None = None
) -> Registry:
    """Add one record per row of a ``name,bits,tag...`` CSV.

    ``bits`` is a bit string (designation) or wildcard string (pattern).
    Columns after ``bits`` are tags; empty cells are dropped.
    """
    rows = csv.reader(stream)
    header = next(rows, None)
    if not header or [h.strip().lower() for h in header[:2]] != ["name", "bits"]:
        raise MalformedDocument("CSV header must start with name,bits")
    stamp = created_at or utc_now()
    for lineno, row in enumerate(rows, start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) < 2:
            raise MalformedDocument(f"CSV line {lineno}: expected name and bits")
        name, bits = row[0].strip(), row[1].strip()
        pattern = pattern_from_wildcards(reg.schema, bits)
        c: Classification = pattern.to_designation() if "X" not in bits.upper() else pattern
        tags = tuple(t.strip() for t in row[2:] if t.strip())
        reg = add_record(reg, SystemRecord(slugify(name), name, c, {}, stamp, tags))
    return reg


def export_csv(reg: Registry, stream: TextIO) -> None:
    width = max((len(rec.tags) for rec in reg), default=0)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["name", "bits"] + ["tag"] * width)
    for rec in reg:
        writer.writerow([rec.display_name, format(rec.classification, Style.BITSTRING), *rec.tags])
