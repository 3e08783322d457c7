from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from skeleta import gf2
from skeleta.gf2 import (
    DimensionMismatch,
    all_subspaces,
    annihilator,
    basis_vector,
    dot,
    format_bits,
    independence_level,
    is_l_independent,
    parse_bits,
    quotient_rep,
    rank,
    span,
    span_bits,
)


def brute_rank(vectors):
    """Size of the span, by closure, as log2."""
    seen = {0}
    for v in vectors:
        seen |= {x ^ v for x in seen}
    return len(seen).bit_length() - 1


def test_bit_layout_matches_strings():
    assert parse_bits("110") == basis_vector(1, 3) ^ basis_vector(2, 3)
    assert format_bits(parse_bits("011"), 3) == "011"
    assert basis_vector(3, 3) == 1


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_bits("10a")
    with pytest.raises(DimensionMismatch):
        parse_bits("10", 3)


def test_dot_pairing():
    assert dot(parse_bits("110"), parse_bits("011")) == 1
    assert dot(parse_bits("110"), parse_bits("110")) == 0


@given(st.lists(st.integers(0, 63), max_size=8))
def test_rank_agrees_with_closure(vectors):
    assert rank(vectors) == brute_rank(vectors)


def test_span_of_strings():
    S = span_bits(["110", "011"])
    assert S.rank == 2
    assert parse_bits("101") in S
    assert parse_bits("100") not in S
    assert sorted(S.bitstrings()) == ["011", "101"]
    assert sorted(S) == [0, 3, 5, 6]
    with pytest.raises(DimensionMismatch):
        span_bits(["11", "011"])


def test_independence_levels():
    e1, e2, e3 = (basis_vector(i, 3) for i in (1, 2, 3))
    assert independence_level([e1, e2, e3]) == 3
    assert independence_level([e1, e2, e1 ^ e2]) == 2
    assert independence_level([e1, e1, e2]) == 1
    assert is_l_independent([e1, e2], 5)
    assert not is_l_independent([e1, e2, e1 ^ e2], 3)


@given(st.lists(st.integers(1, 15), min_size=1, max_size=7))
def test_independence_level_definition(vectors):
    level = independence_level(vectors)
    for l in range(1, len(vectors) + 1):
        ok = all(rank(c) == l for c in combinations(vectors, l))
        assert ok == (l <= level)


@given(st.integers(0, 31), st.integers(1, 31))
def test_quotient_rep_is_canonical(v, m):
    r = quotient_rep(v, m)
    assert r in (v, v ^ m)
    assert quotient_rep(v ^ m, m) == r


def test_all_subspaces_of_rank_three():
    subs = all_subspaces(3)
    assert len(subs) == 16
    assert sorted(S.rank for S in subs) == [0] + [1] * 7 + [2] * 7 + [3]


def test_annihilator_involution_exhaustive():
    for S in all_subspaces(3):
        A = annihilator(S)
        assert A.rank == 3 - S.rank
        assert all(dot(a, s) == 0 for a in A for s in S)
        assert set(annihilator(A)) == set(S)


@given(st.lists(st.integers(0, 31), max_size=6))
def test_annihilator_dimension(vectors):
    S = span(vectors, 5)
    assert annihilator(S).rank == 5 - S.rank


def test_rref_pivots_distinct():
    rows = gf2.rref([7, 3, 4, 1])
    assert len(rows) == 3
    assert len({r.bit_length() for r in rows}) == 3
