"""Factor axes and the versioned schemas that order them.

A schema is plain data.  The built-in ten-factor schema serializes to the
same JSON document as any extended schema, so new factors never require a
code change::

    >>> s = base_schema()
    >>> s.version_id, len(s)
    ('base-10', 10)
    >>> factor_at(s, 64).choice1_label
    'Non-Embodied'
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

from ._io import atomic_write_text
from .errors import (
    DuplicateName,
    InvalidFactor,
    InvalidSchema,
    IoFailure,
    MalformedDocument,
    PositionNotNext,
    UnknownPosition,
)

BASE_VERSION_ID = "base-10"


def is_power_of_two(n: int) -> bool:
    return isinstance(n, int) and not isinstance(n, bool) and n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class Factor:
    """One binary design axis and the labels of its two choices."""

    name: str
    position_value: int
    choice0_label: str
    choice1_label: str
    description: str = ""

    def __post_init__(self):
        if not is_power_of_two(self.position_value):
            raise InvalidFactor(
                f"position value {self.position_value!r} is not a power of two"
            )
        for field in ("name", "choice0_label", "choice1_label"):
            value = getattr(self, field)
            if not isinstance(value, str) or not value.strip():
                raise InvalidFactor(f"factor {field} must be a non-empty string")
        if self.choice0_label == self.choice1_label:
            raise InvalidFactor(
                f"factor {self.name!r} has identical choice labels {self.choice0_label!r}"
            )

    def label(self, bit: int) -> str:
        return self.choice1_label if bit else self.choice0_label

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "position_value": self.position_value,
            "choice0_label": self.choice0_label,
            "choice1_label": self.choice1_label,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> Factor:
        try:
            return cls(
                name=doc["name"],
                position_value=doc["position_value"],
                choice0_label=doc["choice0_label"],
                choice1_label=doc["choice1_label"],
                description=doc.get("description", "") or "",
            )
        except (KeyError, TypeError) as exc:
            raise MalformedDocument(f"bad factor entry: {exc}") from None


@dataclass(frozen=True)
class FactorSchema:
    """An ordered set of factors at positions 1, 2, 4, ..., 2**(N-1)."""

    version_id: str
    factors: tuple[Factor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.version_id:
            raise InvalidSchema("schema version_id must be non-empty")
        if not self.factors:
            raise InvalidSchema("schema needs at least one factor")
        for k, factor in enumerate(self.factors):
            if factor.position_value != 1 << k:
                raise InvalidSchema(
                    f"factor {factor.name!r} sits at {factor.position_value}, "
                    f"expected {1 << k}"
                )
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise DuplicateName(f"factor names repeat in schema {self.version_id!r}")
        object.__setattr__(self, "_hash", hash((self.version_id, self.factors)))

    # schemas key every pattern and designation; hash once
    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    @property
    def size(self) -> int:
        """Number of fully specified designations, 2**N."""
        return 1 << len(self.factors)

    @property
    def full_mask(self) -> int:
        return self.size - 1

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(f.position_value for f in self.factors)

    def has_position(self, position_value: int) -> bool:
        return is_power_of_two(position_value) and position_value < self.size

    def position_of(self, name: str) -> int | None:
        for f in self.factors:
            if f.name == name:
                return f.position_value
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "version_id": self.version_id,
            "factors": [f.to_dict() for f in self.factors],
        }

    @classmethod
    def from_dict(cls, doc: Any) -> FactorSchema:
        if not isinstance(doc, dict) or "version_id" not in doc or "factors" not in doc:
            raise MalformedDocument("schema document needs 'version_id' and 'factors'")
        if not isinstance(doc["factors"], list):
            raise MalformedDocument("schema 'factors' must be a list")
        factors = [Factor.from_dict(f) for f in doc["factors"]]
        factors.sort(key=lambda f: f.position_value)
        return cls(version_id=doc["version_id"], factors=tuple(factors))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


_BASE_FACTORS = (
    Factor("Relationship with Humans", 1, "Collaborative", "Competitive"),
    Factor("Locus of Control", 2, "Decentralized", "Centralized"),
    Factor("Cross-AI Learning", 4, "Connected", "Isolated"),
    Factor("Human Potential Approach", 8, "Potential Developing", "Potential Status Quo"),
    Factor("Emotionality", 16, "Emotionally Expressive", "Emotionally Inert"),
    Factor("Cultural Flexibility", 32, "Culturally Flexible", "Monoculture"),
    Factor("Embodiment", 64, "Embodied", "Non-Embodied"),
    Factor("Nonlocal Access", 128, "Nonlocality Enabled", "Nonlocality Disabled"),
    Factor("Serendipity Access", 256, "Serendipity Enabled", "Serendipity Disabled"),
    Factor("Sentience", 512, "Sentient", "Non-Sentient"),
)

_BASE = FactorSchema(BASE_VERSION_ID, _BASE_FACTORS)


def base_schema() -> FactorSchema:
    return _BASE


def extend(schema: FactorSchema, new_factor: Factor) -> FactorSchema:
    """Append a factor at the next free position.

    Designations of the old schema keep their decimal value; the new factor
    reads as choice 0 for them.
    """
    expected = schema.size
    if new_factor.position_value != expected:
        raise PositionNotNext(
            f"new factor must sit at {expected}, got {new_factor.position_value}"
        )
    if schema.position_of(new_factor.name) is not None:
        raise DuplicateName(f"factor {new_factor.name!r} already in schema")
    version = f"{schema.version_id}+{new_factor.name}@{new_factor.position_value}"
    return FactorSchema(version, schema.factors + (new_factor,))


def factor_at(schema: FactorSchema, position_value: int) -> Factor:
    if not schema.has_position(position_value):
        raise UnknownPosition(
            f"{position_value!r} is not a factor position of schema {schema.version_id!r}"
        )
    return schema.factors[position_value.bit_length() - 1]


def is_extension_of(new: FactorSchema, old: FactorSchema) -> bool:
    """True when ``new`` starts with exactly the factors of ``old``."""
    return len(new) >= len(old) and new.factors[: len(old)] == old.factors


def load_schema(path: str | Path) -> FactorSchema:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read schema file {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"schema file {path} is not JSON: {exc}") from None
    return FactorSchema.from_dict(doc)


def save_schema(schema: FactorSchema, path: str | Path) -> None:
    atomic_write_text(Path(path), schema.to_json())
