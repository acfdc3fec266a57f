import pytest
from hypothesis import given

from tripstern.algebra import A0, A1, rational_inverse, row_apply, unimodular_inverse
from tripstern.family import TRIANGLE_MAP
from tripstern.germs import (ROOT_GERM, Germ, enumerate_forbidden, enumerate_germs, g_case,
                             germ_chain, germ_of, in_P, in_S, inverse_step, is_germ, iter_P,
                             multiplicity_census, partition_check, tree_elements)
from tripstern.stern import levels
from tests.strategies import potential_triples


def test_in_P():
    assert in_P((1, 1, 1)) and in_P((1, 2, 3))
    assert not in_P((2, 1, 3)) and not in_P((2, 2, 2)) and not in_P((0, 1, 2))


def test_inverse_step_examples():
    assert inverse_step((1, 1, 2)) == (1, 1, 1)
    assert inverse_step((1, 2, 3)) == (1, 1, 2)
    assert inverse_step((1, 2, 4)) == (1, 2, 3)
    assert inverse_step((2, 2, 3)) is None
    assert inverse_step((1, 1, 1)) is None
    with pytest.raises(ValueError):
        inverse_step((3, 2, 1))


def test_germ_examples():
    assert germ_of((1, 1, 1)) == ROOT_GERM
    assert germ_of((1, 2, 3)) == Germ(1, 1)
    assert germ_chain((1, 2, 3)) == [(1, 2, 3), (1, 1, 2), (1, 1, 1)]
    assert germ_of((2, 2, 3)) == Germ(2, 3)
    assert germ_of((2, 2, 3)).triple == (2, 2, 3)


def test_in_S_examples():
    assert in_S((1, 2, 3)) and in_S((2, 3, 4))
    assert not in_S((2, 2, 3))
    assert not in_S((3, 2, 1))


@given(potential_triples())
def test_round_trip(t):
    assert inverse_step(row_apply(t, A0)) == t
    assert inverse_step(row_apply(t, A1)) == t


@given(potential_triples())
def test_exclusivity(t):
    if tuple(t) == (1, 1, 2):
        return
    pre = [row_apply(t, unimodular_inverse(M)) for M in (A0, A1)]
    assert sum(in_P(v) for v in pre) <= 1


@given(potential_triples())
def test_cases_are_exhaustive_and_exclusive(t):
    case = g_case(t)
    assert (case == "germ") == is_germ(t)
    assert (case == "germ") == (inverse_step(t) is None)


def test_degenerate_germs():
    # (a, a, 2a) with a > 1 admits no G branch and has no preimage in P
    for a in range(2, 8):
        t = (a, a, 2 * a)
        assert is_germ(t) and inverse_step(t) is None
        assert row_apply(t, rational_inverse(A0)) == (a, a, a)
        assert row_apply(t, rational_inverse(A1)) == (a, a, a)
        assert not in_S(t)
    assert not is_germ((1, 1, 2))


@given(potential_triples())
def test_germ_chain_decreases(t):
    chain = germ_chain(t)
    sums = [sum(x) for x in chain]
    assert all(a > b for a, b in zip(sums, sums[1:]))
    assert all(in_P(x) for x in chain)


def test_forbidden_examples():
    assert enumerate_forbidden(3) == []
    assert (2, 2, 3) in enumerate_forbidden(7)
    found = enumerate_forbidden(12)
    assert found == sorted(found)


def test_forbidden_vs_tree_oracle():
    bound = 40
    # breadth-first walk of the (e,e,e) tree; children always have larger sums
    reachable, frontier = set(), [(1, 1, 1)]
    while frontier:
        reachable.update(frontier)
        frontier = [u for t in frontier for u in (row_apply(t, A0), row_apply(t, A1))
                    if sum(u) <= bound]
    expected = sorted(t for t in iter_P(bound) if t not in reachable)
    assert enumerate_forbidden(bound) == expected


def test_tree_elements_matches_levels():
    # the right spine (1,1,n) gives level n sums of n + 2, so 11 levels cover sum 12
    assert tree_elements((1, 1, 1), 12) == {t for L in levels(TRIANGLE_MAP, 11)
                                              for t in L if sum(t) <= 12}


def test_partition():
    r = partition_check(40)
    assert r.ok
    assert r.germs[0] == ROOT_GERM
    assert Germ(2, 4) in r.germs


def test_germ_list_small():
    assert enumerate_germs(9) == [Germ(1, 1), Germ(2, 3), Germ(2, 4)]


def test_census():
    c = multiplicity_census(18)
    assert c.ok
    assert c.count((1, 1, 2)) == 2 and c.positions[(1, 1, 2)] == [2, 3]
    assert c.count((1, 2, 3)) == 2 and c.positions[(1, 2, 3)] == [4, 6]
    assert c.count((1, 1, 1)) == 1


@pytest.mark.parametrize("t", [(2, 2, 3), (3, 3, 5), (2, 2, 4)])
def test_germs_absent_from_tree(t):
    assert t not in tree_elements((1, 1, 1), 3 * sum(t))
