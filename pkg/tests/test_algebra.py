from fractions import Fraction

import pytest
from hypothesis import given

from tripstern.algebra import (A0, A1, IDENTITY, PERMS, NotUnimodularError, Perm3, Triple,
                               as_number, det, make_triple, mat_add, mat_mul, mat_pow,
                               perm_from_matrix, perm_matrix, rational_inverse, row_apply,
                               unimodular_inverse)
from tests.strategies import int_triples, perms, rational_triples


def test_perm_matrices_as_printed():
    assert perm_matrix("e") == IDENTITY
    assert perm_matrix("12") == ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    assert perm_matrix("123") == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    assert perm_matrix("(13)") == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_perm_parse_rejects_unknown():
    with pytest.raises(ValueError):
        Perm3.parse("14")


@given(perms)
def test_perm_matrix_is_permutation(p):
    m = perm_matrix(p)
    assert all(sorted(row) == [0, 0, 1] for row in m)
    assert all(sorted(col) == [0, 0, 1] for col in zip(*m))
    assert det(m) in (1, -1)
    assert mat_mul(m, perm_matrix(p.inverse)) == IDENTITY


@given(perms, perms)
def test_perm_closure(p, q):
    assert perm_from_matrix(mat_mul(p.matrix, q.matrix)) == p * q


def test_mat_mul_examples():
    assert mat_mul(IDENTITY, A0) == A0
    assert mat_mul(A0, unimodular_inverse(A0)) == IDENTITY
    assert mat_mul(perm_matrix("12"), A0) == ((1, 0, 0), (0, 0, 1), (0, 1, 1))


def test_row_apply_identities():
    a, b, c = 5, 7, 11
    assert row_apply((a, b, c), A0) == (b, c, a + c)
    assert row_apply((a, b, c), A1) == (a, b, a + c)
    assert row_apply((1, 1, 1), IDENTITY) == (1, 1, 1)


def test_unimodular_inverse_examples():
    assert unimodular_inverse(IDENTITY) == IDENTITY
    assert unimodular_inverse(A1) == ((1, 0, -1), (0, 1, 0), (0, 0, 1))
    assert mat_mul(A0, unimodular_inverse(A0)) == IDENTITY
    assert det(A0) in (1, -1) and det(A1) in (1, -1)


def test_unimodular_inverse_rejects():
    with pytest.raises(NotUnimodularError):
        unimodular_inverse(((2, 0, 0), (0, 1, 0), (0, 0, 1)))


def _brute_inverse(M):
    """Search 3x3 integer matrices with entries in [-2, 2] for X with M X = I, row by row."""
    import itertools
    cols = []
    for j in range(3):
        e = tuple(int(i == j) for i in range(3))
        for v in itertools.product(range(-2, 3), repeat=3):
            if tuple(sum(M[i][k] * v[k] for k in range(3)) for i in range(3)) == e:
                cols.append(v)
                break
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


@given(perms, perms)
def test_inverse_matches_brute_force(s, t):
    M = mat_mul(mat_mul(s.matrix, A0), t.matrix)
    assert unimodular_inverse(M) == _brute_inverse(M)


@given(int_triples, int_triples)
def test_row_apply_linear(t, s):
    for M in (A0, A1, mat_add(A0, A1)):
        lhs = row_apply(tuple(x + y for x, y in zip(t, s)), M)
        rhs = tuple(x + y for x, y in zip(row_apply(t, M), row_apply(s, M)))
        assert lhs == rhs


@given(rational_triples)
def test_row_apply_exact_on_rationals(t):
    out = row_apply(t, A0)
    assert out == (t[1], t[2], t[0] + t[2])
    assert all(isinstance(x, (int, Fraction)) for x in out)


def test_mat_pow_negative():
    assert mat_pow(A1, -3) == mat_pow(unimodular_inverse(A1), 3)
    assert mat_mul(mat_pow(A1, 4), mat_pow(A1, -4)) == IDENTITY


def test_rational_inverse():
    M = ((2, 1, 0), (0, 1, 0), (0, 0, 3))
    inv = rational_inverse(M)
    prod = tuple(tuple(sum(M[i][k] * inv[k][j] for k in range(3)) for j in range(3)) for i in range(3))
    assert prod == IDENTITY


def test_no_floats():
    with pytest.raises(TypeError):
        as_number(0.5)
    assert make_triple(("1/2", 2, Fraction(3, 1))) == Triple(Fraction(1, 2), 2, 3)


def test_all_six_tags():
    assert [p.value for p in PERMS] == ["e", "12", "13", "23", "123", "132"]
