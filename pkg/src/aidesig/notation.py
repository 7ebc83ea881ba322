"""Parser and formatter for designation text.

Recognized forms (surrounding whitespace ignored)::

    System-<decimal>                       System-734
    Category-<p>/<b>[-<p>/<b>]* [System|Systems]
                                           Category-2/0-4/0 System
    N characters over {0,1}                1011011110
    N characters over {0,1,X}, >= one X    XXXXXXX00X   (x accepted)

``p`` is a position value (1, 2, 4, ...), not a row index.  Bit and wildcard
strings are written most significant position first.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .designation import Designation, from_bitstring, to_bitstring
from .errors import (
    BadChar,
    BadLength,
    ConflictingConstraint,
    OutOfRange,
    StyleMismatch,
    UnknownPosition,
    UnrecognizedSyntax,
)
from .pattern import CategoryPattern, from_designation, specialize, unspecified
from .schema import FactorSchema


class Style(str, enum.Enum):
    SYSTEM_NAME = "system-name"
    CATEGORY_NAME = "category-name"
    BITSTRING = "bitstring"


class SourceForm(str, enum.Enum):
    SYSTEM_NAME = "system-name"
    CATEGORY_NAME = "category-name"
    BITSTRING = "bitstring"
    WILDCARD_STRING = "wildcard-string"


@dataclass(frozen=True)
class ParsedDesignationText:
    value: Designation | CategoryPattern
    source_form: SourceForm

    @property
    def is_full(self) -> bool:
        return isinstance(self.value, Designation)


_SYSTEM_RE = re.compile(r"System-(\d+)", re.IGNORECASE)
_GROUP = r"(\d+)/([01])"
_CATEGORY_RE = re.compile(
    rf"Category-{_GROUP}(?:-{_GROUP})*(?:\s+Systems?)?", re.IGNORECASE
)
_GROUP_RE = re.compile(_GROUP)
_STREAM_RE = re.compile(r"[0-9A-Za-z]+")


def parse(schema: FactorSchema, text: str) -> ParsedDesignationText:
    s = text.strip()
    if m := _SYSTEM_RE.fullmatch(s):
        n = int(m.group(1))
        if n >= schema.size:
            raise OutOfRange(f"System-{n} is outside [0, {schema.size}) for {schema.version_id!r}")
        return ParsedDesignationText(Designation(n, schema), SourceForm.SYSTEM_NAME)
    if _CATEGORY_RE.fullmatch(s):
        return ParsedDesignationText(_parse_category(schema, s), SourceForm.CATEGORY_NAME)
    if _STREAM_RE.fullmatch(s):
        return _parse_stream(schema, s)
    raise UnrecognizedSyntax(f"cannot read {text!r} as a system, category, or bit string")


def _parse_category(schema: FactorSchema, s: str) -> CategoryPattern:
    body = s.split(None, 1)[0][len("Category-"):]
    p = unspecified(schema)
    for position, bit in _GROUP_RE.findall(body):
        position, bit = int(position), int(bit)
        if not schema.has_position(position):
            raise UnknownPosition(
                f"{position} is not a factor position of schema {schema.version_id!r}"
            )
        try:
            p = specialize(p, position, bit)
        except ConflictingConstraint:
            raise ConflictingConstraint(
                f"position {position} constrained to both 0 and 1 in {s!r}"
            ) from None
    return p


def _parse_stream(schema: FactorSchema, s: str) -> ParsedDesignationText:
    n = len(schema)
    upper = s.upper()
    looks_binary = set(upper) <= {"0", "1", "X"}
    if len(s) != n:
        if looks_binary:
            raise BadLength(f"{s!r} has {len(s)} characters, schema needs {n}")
        raise UnrecognizedSyntax(f"cannot read {s!r} as a system, category, or bit string")
    if not looks_binary:
        bad = "".join(sorted(set(upper) - {"0", "1", "X"}))
        raise BadChar(f"{s!r} contains {bad!r}; only 0, 1 and X allowed")
    if "X" not in upper:
        return ParsedDesignationText(from_bitstring(schema, s), SourceForm.BITSTRING)
    return ParsedDesignationText(pattern_from_wildcards(schema, upper), SourceForm.WILDCARD_STRING)


def pattern_from_wildcards(schema: FactorSchema, s: str) -> CategoryPattern:
    """Read an N-character 0/1/X string as a pattern, even if it has no X."""
    n = len(schema)
    if len(s) != n:
        raise BadLength(f"{s!r} has {len(s)} characters, schema needs {n}")
    mask = bits = 0
    for i, ch in enumerate(s.upper()):
        position = 1 << (n - 1 - i)
        if ch == "X":
            continue
        if ch not in "01":
            raise BadChar(f"{s!r} contains {ch!r}; only 0, 1 and X allowed")
        mask |= position
        if ch == "1":
            bits |= position
    return CategoryPattern(schema, mask, bits)


def format(item: Designation | CategoryPattern, style: Style | str) -> str:  # noqa: A001
    style = Style(style)
    if style is Style.SYSTEM_NAME:
        if not isinstance(item, Designation):
            raise StyleMismatch("system-name needs a fully specified designation")
        return f"System-{item.value}"
    if style is Style.CATEGORY_NAME:
        if not isinstance(item, CategoryPattern):
            raise StyleMismatch("category-name needs a category pattern, not a designation")
        if not item.mask:
            raise StyleMismatch("category-name needs at least one constrained position")
        groups = "-".join(f"{p}/{b}" for p, b in item.constraints.items())
        return f"Category-{groups} System"
    if isinstance(item, Designation):
        return to_bitstring(item)
    return "".join(cell.char for cell in reversed(item.cells))


def valid_styles(item: Designation | CategoryPattern) -> tuple[Style, ...]:
    """Styles whose output parses back to an equal value of the same type.

    A fully constrained pattern printed as a bit string would read back as a
    designation, so only its category name roundtrips.
    """
    if isinstance(item, Designation):
        return (Style.SYSTEM_NAME, Style.BITSTRING)
    if item.is_fully_specified:
        return (Style.CATEGORY_NAME,)
    if item.mask:
        return (Style.CATEGORY_NAME, Style.BITSTRING)
    return (Style.BITSTRING,)


def parse_designation(schema: FactorSchema, text: str) -> Designation:
    """Parse text that must name one fully specified system.

    Bare decimals are accepted unless they are also a valid N-character bit
    string, in which case the bit string reading wins.
    """
    s = text.strip()
    if s.isdigit() and not (len(s) == len(schema) and set(s) <= {"0", "1"}):
        n = int(s)
        if n >= schema.size:
            raise OutOfRange(f"{n} is outside [0, {schema.size}) for {schema.version_id!r}")
        return Designation(n, schema)
    parsed = parse(schema, s)
    if isinstance(parsed.value, CategoryPattern):
        if parsed.value.is_fully_specified:
            return parsed.value.to_designation()
        raise StyleMismatch(f"{text!r} leaves factors unspecified; a full designation is needed")
    return parsed.value


def parse_pattern(schema: FactorSchema, text: str) -> CategoryPattern:
    """Parse any designation text as a pattern; full designations pin every cell."""
    s = text.strip()
    if s.isdigit() and not (len(s) == len(schema) and set(s) <= {"0", "1"}):
        return from_designation(parse_designation(schema, s))
    parsed = parse(schema, s)
    if isinstance(parsed.value, Designation):
        return from_designation(parsed.value)
    return parsed.value
