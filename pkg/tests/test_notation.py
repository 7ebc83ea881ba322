import random

import pytest
from hypothesis import given, strategies as st

from aidesig import (
    CategoryPattern,
    Designation,
    SourceForm,
    Style,
    format_text,
    from_cells,
    from_constraints,
    from_decimal,
    parse,
    parse_designation,
    parse_pattern,
    unspecified,
)
from aidesig.errors import (
    BadChar,
    BadLength,
    ConflictingConstraint,
    OutOfRange,
    StyleMismatch,
    UnknownPosition,
    UnrecognizedSyntax,
)
from aidesig.notation import valid_styles

from oracles import constraints_from_wildcards


def test_system_name(base):
    parsed = parse(base, "System-734")
    assert parsed.value == from_decimal(base, 734)
    assert parsed.source_form is SourceForm.SYSTEM_NAME
    assert parsed.is_full


def test_category_name(base):
    parsed = parse(base, "Category-2/0-4/0 System")
    assert parsed.source_form is SourceForm.CATEGORY_NAME
    assert parsed.value == from_constraints(base, {2: 0, 4: 0})
    assert parsed.value.constraints == {2: 0, 4: 0}


@pytest.mark.parametrize(
    "text",
    ["Category-2/0-4/0", "Category-4/0-2/0 Systems", "  Category-2/0-4/0-2/0 System ", "category-4/0-2/0"],
)
def test_category_order_and_duplicates_irrelevant(base, text):
    assert parse(base, text).value == from_constraints(base, {2: 0, 4: 0})


def test_wildcard_string(base):
    parsed = parse(base, "0XXXXXXXXX")
    assert parsed.source_form is SourceForm.WILDCARD_STRING
    assert parsed.value.constraints == {512: 0}
    assert parse(base, "0xxxxxxxxx").value == parsed.value


def test_bitstring(base):
    parsed = parse(base, "1011011110")
    assert parsed.source_form is SourceForm.BITSTRING
    assert parsed.value == from_decimal(base, 734)


@pytest.mark.parametrize(
    "text, error",
    [
        ("Category-2/0-2/1", ConflictingConstraint),
        ("Category-3/1", UnknownPosition),
        ("Category-1024/1", UnknownPosition),
        ("System-1024", OutOfRange),
        ("101101110", BadLength),
        ("XXXXXXXXX1X", BadLength),
        ("10110111Z0", BadChar),
        ("Sys-734", UnrecognizedSyntax),
        ("System-", UnrecognizedSyntax),
        ("Category-2/2", UnrecognizedSyntax),
        ("Category-2/0 Gadgets", UnrecognizedSyntax),
        ("", UnrecognizedSyntax),
        ("hello", UnrecognizedSyntax),
    ],
)
def test_parse_errors(base, text, error):
    with pytest.raises(error):
        parse(base, text)


def test_format_examples(base):
    assert format_text(from_decimal(base, 0), "system-name") == "System-0"
    assert format_text(from_constraints(base, {1: 1}), Style.BITSTRING) == "XXXXXXXXX1"
    assert format_text(from_constraints(base, {2: 1}), Style.BITSTRING) == "XXXXXXXX1X"
    assert format_text(from_constraints(base, {4: 0, 2: 0}), "category-name") == "Category-2/0-4/0 System"
    assert format_text(from_decimal(base, 734), "bitstring") == "1011011110"


def test_format_bitstring_agrees_with_oracle(base):
    rng = random.Random(7)
    for _ in range(500):
        cells = [rng.choice((None, 0, 1)) for _ in range(10)]
        p = from_cells(base, cells)
        assert constraints_from_wildcards(format_text(p, "bitstring")) == p.constraints


def test_style_mismatch(base):
    with pytest.raises(StyleMismatch):
        format_text(from_decimal(base, 5), "category-name")
    with pytest.raises(StyleMismatch):
        format_text(from_constraints(base, {1: 1}), "system-name")
    with pytest.raises(StyleMismatch):
        format_text(unspecified(base), "category-name")


def test_fully_constrained_category_stays_a_pattern(base):
    p = from_constraints(base, {p: 1 for p in base.positions})
    text = format_text(p, "category-name")
    assert parse(base, text).value == p
    assert isinstance(parse(base, text).value, CategoryPattern)


def test_roundtrip_all_designations(base):
    for n in range(1024):
        d = from_decimal(base, n)
        for style in valid_styles(d):
            assert parse(base, format_text(d, style)).value == d


def random_pattern(rng, schema):
    return from_cells(schema, [rng.choice((None, 0, 1)) for _ in range(len(schema))])


def test_roundtrip_generated_patterns(base):
    rng = random.Random(20240201)
    for _ in range(10_000):
        p = random_pattern(rng, base)
        for style in valid_styles(p):
            assert parse(base, format_text(p, style)).value == p


@given(st.lists(st.sampled_from([None, 0, 1]), min_size=10, max_size=10), st.randoms())
def test_category_permutations_canonicalize(cells, rnd):
    from aidesig import base_schema

    schema = base_schema()
    p = from_cells(schema, cells)
    groups = [f"{pos}/{bit}" for pos, bit in p.constraints.items()]
    if not groups:
        return
    rnd.shuffle(groups)
    text = "Category-" + "-".join(groups)
    assert parse(schema, text).value == p
    assert format_text(parse(schema, text).value, "category-name") == format_text(p, "category-name")


def test_format_deterministic(base):
    a = from_constraints(base, {8: 1, 1: 0})
    b = from_constraints(base, {1: 0, 8: 1})
    assert format_text(a, "category-name") == format_text(b, "category-name") == "Category-1/0-8/1 System"


def test_parse_designation_helper(base):
    assert parse_designation(base, "0").value == 0
    assert parse_designation(base, "734").value == 734
    assert parse_designation(base, "1011011110").value == 734
    with pytest.raises(OutOfRange):
        parse_designation(base, "2048")
    with pytest.raises(StyleMismatch):
        parse_designation(base, "Category-1/1")
    assert isinstance(parse_designation(base, "Category-" + "-".join(f"{p}/0" for p in base.positions)), Designation)


def test_parse_pattern_helper(base):
    assert parse_pattern(base, "System-734").is_fully_specified
    assert parse_pattern(base, "Category-1/1").constraints == {1: 1}
