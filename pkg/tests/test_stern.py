from collections import Counter
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tripstern import tables
from tripstern._config import DepthCapExceeded
from tripstern.algebra import A0, A1, mat_mul, row_apply
from tripstern.family import MONKEMEYER, TRIANGLE_MAP, parse_map
from tripstern.stern import (generating_function_coefficients, index_of_word, level,
                             level_via_generating_function, levels, stern_brocot_level,
                             stern_diatomic, triangle_word, trip_stern_term, word_of_index)
from tests.strategies import maps, positive_triples, rational_triples, words


def _naive_terms(tmap, count, seed=(1, 1, 1)):
    """a_1 .. a_count straight from the recursive definition, in a dict."""
    a = {1: tuple(seed)}
    for m in range(2, count + 1):
        a[m] = tuple(row_apply(a[m // 2], tmap.F(m % 2)))
    return a


def test_first_terms():
    for name, expected in tables.FIRST_TERMS.items():
        tmap = parse_map(name)
        assert [trip_stern_term(tmap, m) for m in range(1, 8)] == expected


@given(maps, st.integers(min_value=1, max_value=300), rational_triples)
def test_term_matches_naive_recursion(tmap, m, seed):
    assert trip_stern_term(tmap, m, seed) == _naive_terms(tmap, m, seed)[m]


@given(maps, rational_triples)
def test_root_is_seed(tmap, seed):
    assert trip_stern_term(tmap, 1, seed) == seed


def test_triangle_word_symbolic_examples():
    a, b, c = 3, 7, 19  # generic values stand in for symbols
    assert triangle_word(TRIANGLE_MAP, (0, 0), (a, b, c)) == (c, a + c, a + b + c)
    assert triangle_word(parse_map("12,e,e"), (1, 0), (a, b, c)) == (b, b + c, a + b + c)
    assert triangle_word(TRIANGLE_MAP, (), (a, b, c)) == (a, b, c)


@given(maps, words, rational_triples)
def test_index_word_coherence(tmap, word, seed):
    m = index_of_word(word)
    assert word_of_index(m) == word
    assert trip_stern_term(tmap, m, seed) == triangle_word(tmap, word, seed)


def test_levels_examples():
    assert level(TRIANGLE_MAP, 3).triples == [(1, 2, 3), (1, 1, 3), (1, 2, 3), (1, 1, 3)]
    assert level(TRIANGLE_MAP, 4).triples == [(2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 1, 4),
                                              (2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 1, 4)]
    assert level(MONKEMEYER, 1).triples == [(1, 1, 1)]


@given(maps, st.integers(min_value=1, max_value=9), positive_triples)
def test_level_is_index_block(tmap, n, seed):
    naive = _naive_terms(tmap, 2 ** n - 1, seed)
    L = level(tmap, n, seed)
    assert L.triples == [naive[m] for m in range(2 ** (n - 1), 2 ** n)]
    assert L.index(0) == 2 ** (n - 1)


@given(maps, st.integers(min_value=1, max_value=7))
def test_level_children(tmap, n):
    parent, child = levels(tmap, n + 1)[-2:]
    for j, t in enumerate(parent):
        assert child[2 * j] == row_apply(t, tmap.F0)
        assert child[2 * j + 1] == row_apply(t, tmap.F1)


def test_eee_subtrees_symmetric():
    for L in levels(TRIANGLE_MAP, 10)[1:]:
        half = len(L) // 2
        assert L.triples[:half] == L.triples[half:]


def test_eee_entries_ordered():
    for L in levels(TRIANGLE_MAP, 12)[1:]:
        v = L.values
        assert np.all((0 < v[:, 0]) & (v[:, 0] <= v[:, 1]) & (v[:, 1] < v[:, 2]))


def test_big_entries_switch_to_python_ints():
    L = level(TRIANGLE_MAP, 3, (10**30, 1, 1))
    assert L.values.dtype == object
    assert L[0] == row_apply(row_apply((10**30, 1, 1), A0), A0)


def test_rational_seed_is_exact():
    L = level(TRIANGLE_MAP, 4, (Fraction(1, 3), Fraction(1, 2), 2))
    assert all(isinstance(x, (int, Fraction)) for t in L for x in t)
    assert L[0] == triangle_word(TRIANGLE_MAP, (0, 0, 0), (Fraction(1, 3), Fraction(1, 2), 2))


def test_depth_cap(monkeypatch):
    with pytest.raises(DepthCapExceeded):
        level(TRIANGLE_MAP, 31)
    monkeypatch.setenv("TRIP_DEPTH_CAP", "3")
    with pytest.raises(DepthCapExceeded):
        level(TRIANGLE_MAP, 4)


def test_generating_function_level_two():
    coeffs = generating_function_coefficients(TRIANGLE_MAP, 2)
    assert coeffs[0] == mat_mul(A0, A0)
    assert coeffs[1] == mat_mul(A1, A0)
    assert coeffs[2] == mat_mul(A0, A1)
    assert coeffs[3] == mat_mul(A1, A1)
    assert level_via_generating_function(TRIANGLE_MAP, 2) == Counter(
        [(1, 2, 3), (1, 2, 3), (1, 1, 3), (1, 1, 3)])


@given(maps)
def test_generating_function_one_factor(tmap):
    assert level_via_generating_function(tmap, 1) == Counter(
        [row_apply((1, 1, 1), tmap.F0), row_apply((1, 1, 1), tmap.F1)])


@given(maps, st.integers(min_value=1, max_value=8))
def test_generating_function_multiset(tmap, n):
    assert level_via_generating_function(tmap, n) == Counter(level(tmap, n + 1).triples)


def test_generating_function_is_bit_reversed():
    n = 5
    coeffs = generating_function_coefficients(MONKEMEYER, n)
    L = level(MONKEMEYER, n + 1)
    for k in range(2 ** n):
        rev = int(format(k, f"0{n}b")[::-1], 2)
        assert row_apply((1, 1, 1), coeffs[k]) == L[rev]


def test_stern_diatomic():
    assert [stern_diatomic(n) for n in range(1, 10)] == [1, 1, 2, 1, 3, 2, 3, 1, 4]
    assert all(stern_diatomic(2 ** k) == 1 for k in range(40))
    assert stern_diatomic(5) == 3


@given(st.integers(min_value=1, max_value=10**6))
def test_stern_recursion(n):
    assert stern_diatomic(2 * n) == stern_diatomic(n)
    assert stern_diatomic(2 * n + 1) == stern_diatomic(n) + stern_diatomic(n + 1)


def test_stern_brocot_levels():
    F = Fraction
    assert stern_brocot_level(0) == [F(0), F(1)]
    assert stern_brocot_level(2) == [F(0), F(1, 3), F(1, 2), F(2, 3), F(1)]
    assert stern_brocot_level(3) == [F(0), F(1, 4), F(1, 3), F(2, 5), F(1, 2), F(3, 5),
                                     F(2, 3), F(3, 4), F(1)]


def test_stern_brocot_lowest_terms_and_denominators():
    from tripstern.stern import stern_brocot_pairs
    pairs = stern_brocot_pairs(8)
    assert all(gcd(p, q) == 1 for p, q in pairs)
    # denominators read the diatomic sequence on the block 2^8 .. 2^9
    assert [q for _, q in pairs][:-1] == [stern_diatomic(m) for m in range(2 ** 8, 2 ** 9)]
