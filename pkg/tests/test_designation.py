import pytest
from hypothesis import given, strategies as st

from aidesig import (
    Factor,
    extend,
    from_bitstring,
    from_choices,
    from_decimal,
    is_collaborative,
    is_sentient,
    to_bitstring,
    to_choices,
)
from aidesig.errors import (
    BadChar,
    BadLength,
    DuplicatePosition,
    IncompleteChoices,
    OutOfRange,
    SchemaMismatch,
    UnknownPosition,
)

from oracles import base2_by_division, set_positions

SYSTEM_734 = {1: 0, 2: 1, 4: 1, 8: 1, 16: 1, 32: 0, 64: 1, 128: 1, 256: 0, 512: 1}


def test_from_decimal_bounds(base):
    assert from_decimal(base, 734).value == 734
    assert from_decimal(base, 1023).value == 1023
    for bad in (1024, -1, 2048):
        with pytest.raises(OutOfRange):
            from_decimal(base, bad)


def test_to_choices_734(base):
    assert to_choices(from_decimal(base, 734)) == SYSTEM_734
    assert list(to_choices(from_decimal(base, 734))) == sorted(SYSTEM_734)


def test_to_choices_edges(base):
    assert set(to_choices(from_decimal(base, 0)).values()) == {0}
    single = to_choices(from_decimal(base, 512))
    assert [p for p, b in single.items() if b] == [512]


def test_from_choices_examples(base):
    assert from_choices(base, SYSTEM_734).value == 734
    llm = SYSTEM_734 | {8: 0, 16: 0, 128: 0}
    assert from_choices(base, llm).value == 582
    assert from_choices(base, {p: 1 for p in base.positions}).value == 1023


def test_from_choices_errors(base):
    partial = dict(SYSTEM_734)
    del partial[256]
    with pytest.raises(IncompleteChoices):
        from_choices(base, partial)
    with pytest.raises(UnknownPosition):
        from_choices(base, SYSTEM_734 | {3: 1})
    with pytest.raises(UnknownPosition):
        from_choices(base, SYSTEM_734 | {1024: 0})
    pairs = list(SYSTEM_734.items()) + [(2, 1)]
    with pytest.raises(DuplicatePosition):
        from_choices(base, pairs)


def test_from_choices_accepts_pairs(base):
    assert from_choices(base, list(SYSTEM_734.items())).value == 734


def test_bitstrings(base):
    assert to_bitstring(from_decimal(base, 734)) == "1011011110"
    assert to_bitstring(from_decimal(base, 0)) == "0000000000"
    # 582 expected value from repeated division by two (tests/oracles.py)
    assert to_bitstring(from_decimal(base, 582)) == "1001000110"
    assert from_bitstring(base, "1011011110").value == 734
    assert from_bitstring(base, "0000000000").value == 0


def test_bitstring_errors(base):
    with pytest.raises(BadLength):
        from_bitstring(base, "101101110")
    with pytest.raises(BadChar):
        from_bitstring(base, "10110111X0")


def test_roundtrips_exhaustive(base):
    for n in range(1024):
        d = from_decimal(base, n)
        assert from_choices(base, to_choices(d)) == d
        assert from_bitstring(base, to_bitstring(d)) == d
        assert to_bitstring(d) == base2_by_division(n, 10)


def test_decimal_identity_exhaustive(base):
    for n in range(1024):
        choices = to_choices(from_decimal(base, n))
        ones = [p for p, b in choices.items() if b]
        assert ones == set_positions(n)
        assert sum(ones) == n


def test_mnemonic_examples(base):
    assert is_collaborative(from_decimal(base, 734))
    assert not is_collaborative(from_decimal(base, 1023))
    assert is_collaborative(from_decimal(base, 0))
    assert not is_sentient(from_decimal(base, 734))
    assert is_sentient(from_decimal(base, 0))
    assert is_sentient(from_decimal(base, 511))


def test_mnemonic_theorems_exhaustive(base):
    for n in range(1024):
        d = from_decimal(base, n)
        assert is_sentient(d) == (n < 512)
        assert is_collaborative(d) == (n % 2 == 0)


def test_mnemonics_need_their_factor(small5):
    d = from_decimal(small5, 3)
    assert not is_collaborative(d)
    with pytest.raises(UnknownPosition):
        is_sentient(d)


def test_extended_schema_preserves_old_values(base):
    ext = extend(base, Factor("Extra", 1024, "Off", "On"))
    ext2 = extend(ext, Factor("More", 2048, "Off", "On"))
    for n in range(1024):
        choices = to_choices(from_decimal(ext2, n))
        assert choices[1024] == 0 and choices[2048] == 0
        assert {p: b for p, b in choices.items() if p < 1024} == to_choices(from_decimal(base, n))
    # mnemonics are bit-based: sentience stays bit 512 even past 1023
    assert is_sentient(from_decimal(ext, 1024 + 5))
    assert not is_sentient(from_decimal(ext, 1024 + 512))


def test_cross_schema_values_not_coerced(base):
    ext = extend(base, Factor("Extra", 1024, "Off", "On"))
    a, b = from_decimal(base, 5), from_decimal(ext, 5)
    assert a != b
    with pytest.raises(SchemaMismatch):
        _ = a < b
    assert from_decimal(base, 3) < from_decimal(base, 5)


@given(st.integers(min_value=0, max_value=2 ** 14 - 1))
def test_roundtrip_larger_schema(n):
    from aidesig import base_schema

    schema = base_schema()
    for k in range(10, 14):
        schema = extend(schema, Factor(f"F{k}", 2 ** k, "a", "b"))
    d = from_decimal(schema, n)
    assert to_bitstring(d) == base2_by_division(n, 14)
    assert from_bitstring(schema, to_bitstring(d)) == d
    assert from_choices(schema, to_choices(d)) == d
