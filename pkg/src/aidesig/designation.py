"""Fully specified designations and their codecs.

A designation is the decimal reading of the binary stream of choices.  Bit
``p`` of the value holds the choice for the factor at position ``p``::

    >>> s = base_schema()
    >>> d = from_bitstring(s, "1011011110")
    >>> d.value
    734
    >>> to_choices(d)[2], to_choices(d)[1]
    (1, 0)
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import (
    BadChar,
    BadLength,
    DuplicatePosition,
    IncompleteChoices,
    OutOfRange,
    SchemaMismatch,
    UnknownPosition,
)
from .schema import FactorSchema, base_schema

ChoiceMap = dict[int, int]

RELATIONSHIP = "Relationship with Humans"
SENTIENCE = "Sentience"


@dataclass(frozen=True)
class Designation:
    value: int
    schema: FactorSchema

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise OutOfRange(f"designation value must be an integer, got {self.value!r}")
        if not 0 <= self.value < self.schema.size:
            raise OutOfRange(
                f"{self.value} outside [0, {self.schema.size}) for schema "
                f"{self.schema.version_id!r}"
            )

    @property
    def schema_version(self) -> str:
        return self.schema.version_id

    def __int__(self) -> int:
        return self.value

    def __lt__(self, other: Designation) -> bool:
        if not isinstance(other, Designation):
            return NotImplemented
        _require_same_schema(self.schema, other.schema)
        return self.value < other.value

    def bit(self, position_value: int) -> int:
        if not self.schema.has_position(position_value):
            raise UnknownPosition(f"{position_value!r} is not a factor position")
        return 1 if self.value & position_value else 0

    def __str__(self) -> str:
        return f"System-{self.value}"


def _require_same_schema(a: FactorSchema, b: FactorSchema) -> None:
    if a is not b and (a.version_id != b.version_id or a != b):
        raise SchemaMismatch(
            f"schema {a.version_id!r} differs from {b.version_id!r}; migrate explicitly"
        )


def from_decimal(schema: FactorSchema, n: int) -> Designation:
    return Designation(n, schema)


def to_choices(d: Designation) -> ChoiceMap:
    """Choice bit per position, ascending by position."""
    return {p: 1 if d.value & p else 0 for p in d.schema.positions}


def from_choices(
    schema: FactorSchema, choices: Mapping[int, int] | Iterable[tuple[int, int]]
) -> Designation:
    """Sum the positions answered 1.

    ``choices`` may be a mapping or a sequence of ``(position, bit)`` pairs;
    only the pair form can carry a duplicate position.
    """
    pairs = choices.items() if isinstance(choices, Mapping) else choices
    seen: set[int] = set()
    value = 0
    for position, bit in pairs:
        if not schema.has_position(position):
            raise UnknownPosition(
                f"{position!r} is not a factor position of schema {schema.version_id!r}"
            )
        if position in seen:
            raise DuplicatePosition(f"position {position} answered twice")
        if bit not in (0, 1):
            raise BadChar(f"choice for position {position} must be 0 or 1, got {bit!r}")
        seen.add(position)
        if bit:
            value |= position
    missing = [p for p in schema.positions if p not in seen]
    if missing:
        raise IncompleteChoices(f"no choice given for positions {missing}")
    return Designation(value, schema)


def to_bitstring(d: Designation) -> str:
    """MSB-first: the highest position is the leftmost character."""
    return format(d.value, f"0{len(d.schema)}b")


def from_bitstring(schema: FactorSchema, s: str) -> Designation:
    n = len(schema)
    if len(s) != n:
        raise BadLength(f"bitstring {s!r} has {len(s)} characters, schema needs {n}")
    bad = sorted({c for c in s if c not in "01"})
    if bad:
        raise BadChar(f"bitstring {s!r} contains {''.join(bad)!r}; only 0 and 1 allowed")
    return Designation(int(s, 2), schema)


def is_collaborative(d: Designation) -> bool:
    return _bit_of_named(d, RELATIONSHIP) == 0


def is_sentient(d: Designation) -> bool:
    return _bit_of_named(d, SENTIENCE) == 0


def _bit_of_named(d: Designation, name: str) -> int:
    position = d.schema.position_of(name)
    if position is None:
        raise UnknownPosition(f"schema {d.schema_version!r} has no factor {name!r}")
    return d.bit(position)


__all__ = [
    "ChoiceMap",
    "Designation",
    "from_bitstring",
    "from_choices",
    "from_decimal",
    "is_collaborative",
    "is_sentient",
    "to_bitstring",
    "to_choices",
]
