import pytest
from hypothesis import given, strategies as st

from conftest import ordinals
from ordlaw.ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalSyntaxError,
    SymbolicSegment,
    cnf_split,
    compare,
    enumerate_by_norm,
    format_ordinal,
    matula_decode,
    matula_encode,
    natural_sum,
    norm,
    nth_prime,
    omega_power,
    ordinal,
    ordinal_add,
    ordinals_of_norm,
    parse_ordinal,
    parse_segment,
    prime_index,
)

P = parse_ordinal


@pytest.mark.parametrize("text, expected", [
    ("0", "0"),
    ("7", "7"),
    ("w", "w"),
    ("w^(w*2+1)*3+w+4", "w^(w*2+1)*3+w+4"),
    ("w+w", "w*2"),
    ("1+w", "w"),
    ("w^1", "w"),
    ("w^(w^w)", "w^(w^w)"),
    ("w^2+w^3", "w^3"),
    (" w ^ 2 * 3 ", "w^2*3"),
])
def test_parse_format(text, expected):
    assert format_ordinal(P(text)) == expected


@pytest.mark.parametrize("text, pos", [("", 0), ("w^", 2), ("w*0", 2), ("w+x", 2), ("(w", 0), ("w^w^w", 3)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(OrdinalSyntaxError) as err:
        P(text)
    assert err.value.pos >= pos


@given(ordinals())
def test_format_round_trip(x):
    assert P(format_ordinal(x)) == x


def test_order_examples():
    chain = [ZERO, ONE, ordinal(5), OMEGA, P("w+1"), P("w*2"), P("w^2"), P("w^w"), P("w^(w+1)")]
    for a, b in zip(chain, chain[1:]):
        assert compare(a, b) == -1 and a < b


@given(ordinals(6), ordinals(6), ordinals(6))
def test_addition_associative(a, b, c):
    assert ordinal_add(ordinal_add(a, b), c) == ordinal_add(a, ordinal_add(b, c))


@given(ordinals(6), ordinals(6))
def test_addition_monotone_and_natural_sum(a, b):
    s = ordinal_add(a, b)
    assert compare(s, a) >= 0
    assert compare(natural_sum(a, b), s) >= 0
    assert natural_sum(a, b) == natural_sum(b, a)
    assert norm(natural_sum(a, b)) == norm(a) + norm(b)


@pytest.mark.parametrize("text, n", [("0", 0), ("1", 1), ("5", 5), ("w", 2), ("w^2", 3), ("w^w", 3),
                                     ("w*2+3", 7), ("w^(w+1)", 4)])
def test_norm(text, n):
    assert norm(P(text)) == n


@pytest.mark.parametrize("text, r, tail, ks", [
    ("w^3*2+w*5+7", 1, "w*2", (5, 7)),
    ("w^3*2+w*5+7", 3, "0", (2, 0, 5, 7)),
    ("w^w+w^4+3", 0, "w^w+w^3", (3,)),
    ("4", 2, "0", (0, 0, 4)),
])
def test_cnf_split(text, r, tail, ks):
    t, k = cnf_split(P(text), r)
    assert (format_ordinal(t), k) == (tail, ks)


@given(ordinals(), st.integers(0, 3))
def test_cnf_split_reassembles(x, r):
    tail, ks = cnf_split(x, r)
    y = Ordinal(tuple((ordinal_add(ordinal(r + 1), e), c) for e, c in tail.terms))
    for i, k in zip(range(r, -1, -1), ks):
        if k:
            y = ordinal_add(y, omega_power(ordinal(i), k))
    assert y == x


def test_primes():
    assert [nth_prime(k) for k in range(1, 8)] == [2, 3, 5, 7, 11, 13, 17]
    assert prime_index(13) == 6


@pytest.mark.parametrize("code, text", [(1, "0"), (2, "1"), (3, "w"), (4, "2"), (5, "w^w"),
                                        (6, "w+1"), (7, "w^2"), (8, "3"), (10, "w^w+1"),
                                        (11, "w^(w^w)"), (9, "w*2")])
def test_matula_values(code, text):
    # M(sum w^e) = prod p_{M(e)} with p_1 = 2
    assert matula_encode(P(text)) == code
    assert matula_decode(code) == P(text)


def test_matula_round_trip_small():
    assert all(matula_encode(matula_decode(m)) == m for m in range(1, 2000))


def test_enumeration_counts_match_rooted_trees():
    # rooted trees with n + 1 nodes (OEIS A000081)
    trees = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842]
    assert [len(ordinals_of_norm(n)) for n in range(11)] == trees


def test_enumeration_filters_by_segment():
    assert enumerate_by_norm(OMEGA, 4) == [ordinal(4)]
    assert len(enumerate_by_norm(P("w^2"), 6)) == 4
    with pytest.raises(ValueError):
        enumerate_by_norm(OMEGA, 99)
    with pytest.raises(ValueError):
        enumerate_by_norm(SymbolicSegment("G0"), 3)


def test_segments():
    assert parse_segment("e0") == SymbolicSegment("E0")
    assert parse_segment("bh-ct").tag == "BH-CT"
    assert parse_segment("w^w") == omega_power(OMEGA)
    with pytest.raises(ValueError):
        SymbolicSegment("E1")
