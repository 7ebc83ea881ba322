"""Under-specified systems as ternary masks.

A :class:`CategoryPattern` pins some factors to 0 or 1 and leaves the rest
open.  Internally it is a pair of integers: ``mask`` has a bit set for every
constrained position and ``bits`` holds the required value there (``bits`` is
always a subset of ``mask``).  Every operation is a handful of bitwise ops.

    >>> s = base_schema()
    >>> p = specialize(specialize(unspecified(s), 2, 0), 4, 0)
    >>> cardinality(p)
    256
    >>> subsumes(specialize(unspecified(s), 2, 0), p)
    True
"""
from __future__ import annotations

import enum
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .designation import Designation, _require_same_schema
from .errors import ConflictingConstraint, SchemaMismatch, UnknownPosition
from .schema import FactorSchema, base_schema  # noqa: F401  (doctest)


class Cell(enum.Enum):
    ZERO = 0
    ONE = 1
    UNSPECIFIED = None

    @property
    def char(self) -> str:
        return "X" if self is Cell.UNSPECIFIED else str(self.value)


@dataclass(frozen=True)
class CategoryPattern:
    schema: FactorSchema
    mask: int = 0
    bits: int = 0

    def __post_init__(self):
        full = self.schema.full_mask
        if self.mask & ~full or self.bits & ~full:
            raise UnknownPosition(
                f"pattern constrains positions beyond schema {self.schema.version_id!r}"
            )
        if self.bits & ~self.mask:
            raise ValueError("pattern bits must lie inside its mask")

    @property
    def schema_version(self) -> str:
        return self.schema.version_id

    @property
    def cells(self) -> tuple[Cell, ...]:
        """One cell per factor, ascending by position."""
        out = []
        for p in self.schema.positions:
            if not self.mask & p:
                out.append(Cell.UNSPECIFIED)
            else:
                out.append(Cell.ONE if self.bits & p else Cell.ZERO)
        return tuple(out)

    @property
    def constraints(self) -> dict[int, int]:
        """Constrained positions and their bits, ascending by position."""
        return {
            p: 1 if self.bits & p else 0 for p in self.schema.positions if self.mask & p
        }

    @property
    def unspecified_count(self) -> int:
        return len(self.schema) - self.mask.bit_count()

    @property
    def is_fully_specified(self) -> bool:
        return self.mask == self.schema.full_mask

    def to_designation(self) -> Designation:
        if not self.is_fully_specified:
            raise ValueError("pattern leaves factors unspecified")
        return Designation(self.bits, self.schema)


@dataclass(frozen=True)
class Contradiction:
    """The empty category: constraints that no designation satisfies."""

    schema: FactorSchema

    def __bool__(self) -> bool:
        return False


def unspecified(schema: FactorSchema) -> CategoryPattern:
    return CategoryPattern(schema)


def from_constraints(schema: FactorSchema, constraints: Mapping[int, int]) -> CategoryPattern:
    p = unspecified(schema)
    for position, bit in constraints.items():
        p = specialize(p, position, bit)
    return p


def from_cells(schema: FactorSchema, cells) -> CategoryPattern:
    """Build from per-factor cells (``Cell`` or ``0``/``1``/``None``), ascending."""
    cells = list(cells)
    if len(cells) != len(schema):
        raise ValueError(f"expected {len(schema)} cells, got {len(cells)}")
    mask = bits = 0
    for position, cell in zip(schema.positions, cells):
        value = cell.value if isinstance(cell, Cell) else cell
        if value is None:
            continue
        mask |= position
        if value:
            bits |= position
    return CategoryPattern(schema, mask, bits)


def from_designation(d: Designation) -> CategoryPattern:
    return CategoryPattern(d.schema, d.schema.full_mask, d.value)


def _same_schema(a, b) -> None:
    if a.schema is b.schema:
        return
    try:
        _require_same_schema(a.schema, b.schema)
    except SchemaMismatch:
        raise SchemaMismatch(
            f"cannot combine schema {a.schema.version_id!r} with {b.schema.version_id!r}"
        ) from None


def matches(p: CategoryPattern | Contradiction, d: Designation) -> bool:
    _same_schema(p, d)
    if isinstance(p, Contradiction):
        return False
    return d.value & p.mask == p.bits


def cardinality(p: CategoryPattern | Contradiction) -> int:
    if isinstance(p, Contradiction):
        return 0
    return 1 << p.unspecified_count


def enumerate_designations(p: CategoryPattern | Contradiction) -> Iterator[Designation]:
    """Yield every matching designation in ascending decimal order, lazily.

    Counting ``k`` upward and scattering its bits into the free positions
    (lowest bit into the lowest free position) preserves order.
    """
    if isinstance(p, Contradiction):
        return
    free = [pos for pos in p.schema.positions if not p.mask & pos]
    for k in range(1 << len(free)):
        value = p.bits
        for i, pos in enumerate(free):
            if k >> i & 1:
                value |= pos
        yield Designation(value, p.schema)


def subsumes(general: CategoryPattern, specific: CategoryPattern | Contradiction) -> bool:
    _same_schema(general, specific)
    if isinstance(specific, Contradiction):
        return True
    if isinstance(general, Contradiction):
        return False
    return general.mask & ~specific.mask == 0 and specific.bits & general.mask == general.bits


def meet(
    a: CategoryPattern | Contradiction, b: CategoryPattern | Contradiction
) -> CategoryPattern | Contradiction:
    _same_schema(a, b)
    if isinstance(a, Contradiction):
        return a
    if isinstance(b, Contradiction):
        return b
    shared = a.mask & b.mask
    if (a.bits ^ b.bits) & shared:
        return Contradiction(a.schema)
    return CategoryPattern(a.schema, a.mask | b.mask, a.bits | b.bits)


def specialize(p: CategoryPattern, position_value: int, bit: int) -> CategoryPattern:
    if not p.schema.has_position(position_value):
        raise UnknownPosition(
            f"{position_value!r} is not a factor position of schema {p.schema_version!r}"
        )
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    if p.mask & position_value:
        if bool(p.bits & position_value) != bool(bit):
            raise ConflictingConstraint(
                f"position {position_value} already constrained to {1 - bit}"
            )
        return p
    return CategoryPattern(
        p.schema, p.mask | position_value, p.bits | (position_value if bit else 0)
    )
