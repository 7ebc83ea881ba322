"""Independent reference computations for the test suite.

Nothing here imports the package under test; every value is derived by
plain arithmetic (repeated division, brute-force filtering over range(2**n)).
"""


def base2_by_division(n, width):
    """MSB-first binary digits of ``n`` via repeated division by two."""
    digits = []
    while n:
        n, r = divmod(n, 2)
        digits.append(str(r))
    digits.extend("0" * (width - len(digits)))
    return "".join(reversed(digits))


def set_positions(n):
    """Position values (1, 2, 4, ...) whose bit is set in ``n``, by shifting."""
    out = []
    position = 1
    while n:
        if n & 1:
            out.append(position)
        n >>= 1
        position <<= 1
    return out


def satisfies(n, constraints):
    """Does ``n`` meet every ``{position: bit}`` constraint?"""
    bits = set(set_positions(n))
    return all((p in bits) == bool(b) for p, b in constraints.items())


def match_set(constraints, width):
    return frozenset(n for n in range(2 ** width) if satisfies(n, constraints))


def constraints_from_wildcards(s):
    """``{position: bit}`` read off an MSB-first 0/1/X string."""
    width = len(s)
    return {2 ** (width - 1 - i): int(ch) for i, ch in enumerate(s) if ch in "01"}
