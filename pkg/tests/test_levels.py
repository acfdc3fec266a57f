import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tripstern import tables
from tripstern.algebra import PERMS, Perm3, mat_add, row_apply
from tripstern.family import TRIANGLE_MAP, TripMap, all_maps, parse_map
from tripstern.levels import (InvariantViolation, MinSide, PathPolicy, SeedConditionError,
                              base_form, claimed_max_policy, claimed_min_side, conjugate_map,
                              level_stats, level_sums, level_sums_table, maxima_sequence,
                              minima_sequence, observed_argmax_paths, path_maxima,
                              power_iteration, sum_ratio_estimate, sum_sequence, sums_direct,
                              verify_generalized_paths, verify_max_path, verify_min_path)
from tripstern.stern import triangle_word
from tests.strategies import maps, positive_triples, words


def _naive_level(tmap, n, seed=(1, 1, 1)):
    level = [tuple(seed)]
    for _ in range(n - 1):
        level = [tuple(row_apply(t, tmap.F(b))) for t in level for b in (0, 1)]
    return level


def test_eee_maxima():
    assert maxima_sequence(TRIANGLE_MAP, 9) == list(tables.EEE_MAXIMA)


def test_fibonacci_and_unknown_rows():
    assert maxima_sequence(parse_map("e,123,e"), 11) == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]
    assert maxima_sequence(parse_map("e,13,e"), 11) == [1, 2, 3, 5, 7, 11, 16, 25, 36, 56, 81]
    assert maxima_sequence(parse_map("e,e,13"), 5) == [1, 2, 3, 5, 8]


def test_seed_level_stats():
    for tmap in all_maps()[::17]:
        s = level_stats(tmap, 1)
        assert (s.max_value, s.min_value, s.total) == (1, 1, 3)


@given(maps, st.integers(min_value=1, max_value=8), positive_triples)
def test_stats_against_naive_level(tmap, n, seed):
    level = _naive_level(tmap, n, seed)
    s = level_stats(tmap, n, seed)
    assert s.max_value == max(max(t) for t in level)
    assert s.min_value == min(min(t) for t in level)
    assert s.sums == tuple(sum(t[i] for t in level) for i in range(3))
    assert sorted(s.max_positions) == sorted(
        (j, i) for j, t in enumerate(level) for i in range(3) if t[i] == s.max_value)


# Two printed maxima rows disagree with the recursion; the computed values are frozen here
# and the printed ones are checked (and fail) in the acceptance suite.
def test_maxima_rows_as_computed():
    assert maxima_sequence(parse_map("e,23,23"), 12) == [1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28]
    assert maxima_sequence(parse_map("e,23,e"), 11) == [1, 2, 3, 4, 5, 8, 11, 15, 21, 30, 41]


def test_maxima_level5_by_hand_oracle():
    level = _naive_level(parse_map("e,23,e"), 5)
    assert max(max(t) for t in level) == 5
    level = _naive_level(parse_map("e,23,23"), 3)
    assert max(max(t) for t in level) == 2


def test_printed_row_breaks_its_own_recurrence():
    printed = (1, 2, 3, 4, 5, 7, 9, 12, 16, 21)
    assert printed[3] != printed[1] + printed[0]
    computed = maxima_sequence(parse_map("e,23,23"), 20)
    assert all(computed[n] == computed[n - 2] + computed[n - 3] for n in range(3, 20))


def test_recurrences_through_depth_20():
    m = path_maxima(TRIANGLE_MAP, PathPolicy.LEFT, 20)
    assert m[:15] == maxima_sequence(TRIANGLE_MAP, 15)
    assert all(m[n] == m[n - 1] + m[n - 3] for n in range(3, 20))
    f = path_maxima(parse_map("e,e,13"), PathPolicy.RIGHT, 20)
    assert all(f[n] == f[n - 1] + f[n - 2] for n in range(2, 20))


@pytest.mark.parametrize("name", tables.MAX_PATH_RIGHT + tables.MAX_PATH_LEFT
                         + tables.MAX_PATH_ALTERNATE)
def test_max_path_theorem(name):
    tmap = parse_map(name)
    assert verify_max_path(tmap, claimed_max_policy(tmap), 12).ok


@pytest.mark.parametrize("name", tables.MIN_PATH_LEFT + tables.MIN_PATH_RIGHT + tables.MIN_PATH_BOTH)
def test_min_path_theorem(name):
    tmap = parse_map(name)
    r = verify_min_path(tmap, claimed_min_side(tmap), 12)
    assert r.ok and set(r.values) == {1}


def test_path_examples():
    assert verify_max_path(parse_map("e,13,123"), PathPolicy.RIGHT, 12).ok
    assert verify_max_path(TRIANGLE_MAP, "left", 12).ok
    assert verify_max_path(parse_map("e,13,12"), PathPolicy.ALTERNATE, 12).ok
    assert verify_min_path(parse_map("e,12,12"), MinSide.LEFT, 12).ok
    assert verify_min_path(parse_map("e,e,13"), MinSide.RIGHT, 12).ok
    assert verify_min_path(parse_map("e,13,12"), MinSide.BOTH, 12).ok


def test_path_policy_can_fail():
    assert not verify_max_path(TRIANGLE_MAP, PathPolicy.RIGHT, 8).ok


def test_claim_lists_sizes():
    assert len(tables.MAX_PATH_RIGHT + tables.MAX_PATH_LEFT + tables.MAX_PATH_ALTERNATE) == 26
    assert len(tables.MIN_PATH_LEFT + tables.MIN_PATH_RIGHT + tables.MIN_PATH_BOTH) == 32


def test_observed_paths_for_unclaimed_map():
    tmap = parse_map("e,13,e")
    assert claimed_max_policy(tmap) is None
    paths = observed_argmax_paths(tmap, 6)
    assert len(paths) == 6 and all(paths)


def test_level_sums_examples():
    assert sum_sequence(TRIANGLE_MAP, 4) == [3, 8, 22, 60]
    assert level_sums(TRIANGLE_MAP, 2).as_tuple() == (2, 2, 4, 8)
    assert level_sums(parse_map("e,13,132"), 1, (2, 3, 5)).as_tuple() == (2, 3, 5, 10)


@given(maps, positive_triples)
def test_dual_sums(tmap, seed):
    level_sums_table(tmap, 10, seed)


def test_dual_sum_disagreement_is_fatal(monkeypatch):
    import tripstern.levels as lv
    monkeypatch.setattr(lv, "sums_by_recurrence", lambda *a, **k: sums_direct(TRIANGLE_MAP, 3)[::-1])
    with pytest.raises(InvariantViolation):
        lv.level_sums_table(TRIANGLE_MAP, 3)


def test_eee_sum_recurrence():
    S = sum_sequence(TRIANGLE_MAP, 30)
    assert all(S[n] == 4 * S[n - 1] - 5 * S[n - 2] + 4 * S[n - 3] for n in range(3, 30))


def test_ratio_estimates():
    r = sum_ratio_estimate(TRIANGLE_MAP, 30)
    assert abs(r.ratio - tables.ALPHA_EEE) < 1e-4
    assert abs(r.eigenvalue - tables.ALPHA_EEE) < 1e-4
    assert abs(r.s2_over_s1 - (tables.ALPHA_EEE - 1)) < 1e-3
    assert abs(r.s3_over_s2 - (tables.ALPHA_EEE - 1)) < 1e-3


@pytest.mark.parametrize("tmap", all_maps()[::7], ids=lambda m: m.name)
def test_power_iteration_in_range(tmap):
    assert 2 <= power_iteration(mat_add(tmap.F0, tmap.F1)) <= 3 + Fraction(1, 10**6)


def test_conjugate_identity():
    for tmap in all_maps()[::11]:
        assert conjugate_map(tmap, Perm3.E) == tmap


def test_conjugate_eee_by_12():
    assert maxima_sequence(conjugate_map(TRIANGLE_MAP, Perm3("12")), 12) == maxima_sequence(TRIANGLE_MAP, 12)


@given(maps, st.sampled_from(PERMS), words)
def test_conjugation_word_identity(tmap, kappa, word):
    conj = conjugate_map(tmap, kappa)
    assert triangle_word(conj, word) == row_apply(triangle_word(tmap, word), kappa.inverse.matrix)


@given(maps, st.sampled_from(PERMS))
def test_conjugation_preserves_maxima(tmap, kappa):
    assert maxima_sequence(conjugate_map(tmap, kappa), 9) == maxima_sequence(tmap, 9)


@given(maps)
def test_base_form_round_trip(tmap):
    base, kappa = base_form(tmap)
    assert base.sigma == Perm3.E
    assert conjugate_map(base, kappa) == tmap


def test_generalized_examples():
    assert verify_generalized_paths(TRIANGLE_MAP, (1, 2, 4), 10).ok
    assert verify_generalized_paths(parse_map("e,13,123"), (4, 2, 1), 10).ok
    r = verify_generalized_paths(parse_map("e,12,e"), (5, 2, 7), 10)
    mins = [c for c, _ in r.checks if c.kind == "min"]
    assert r.ok and mins
    assert all(v == 2 for c, rep in r.checks if c.kind == "min" for v in rep.values)


def test_generalized_precondition():
    with pytest.raises(SeedConditionError):
        verify_generalized_paths(TRIANGLE_MAP, (3, 2, 1), 6)


@pytest.mark.parametrize("name", tables.GEN_MAX_RIGHT + tables.GEN_MAX_LEFT)
def test_generalized_conjugates(name):
    rng = random.Random(name)
    base = parse_map(name)
    for kappa in PERMS:
        tmap = conjugate_map(base, kappa)
        order = (tables.KAPPA_RIGHT_ORDER if name in tables.GEN_MAX_RIGHT
                 else tables.KAPPA_LEFT_ORDER)[kappa.value]
        vals = sorted(rng.sample(range(1, 30), 3), reverse=name in tables.GEN_MAX_RIGHT)
        seed = [0, 0, 0]
        for ch, v in zip(order, vals):
            seed["abc".index(ch)] = v
        assert verify_generalized_paths(tmap, seed, 8).ok, (tmap.name, seed)


def test_minima_sequence_seed_ones():
    assert minima_sequence(parse_map("e,12,12"), 10) == [1] * 10
    assert minima_sequence(TripMap("e", "e", "e"), 3) == [1, 1, 1]
