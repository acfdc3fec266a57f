"""Exact 3x3 integer matrix algebra for triangle partition maps.

Matrices are tuples of row tuples, so they are immutable and hashable.
Triples are row vectors and always act on the *right* of a matrix:
``row_apply((a, b, c), M)`` is ``(a, b, c) @ M``.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Tuple, Union

Number = Union[int, Fraction]
Mat3 = Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]


class NotUnimodularError(ValueError):
    pass


class Triple(NamedTuple):
    a: Number
    b: Number
    c: Number

    def total(self) -> Number:
        return self.a + self.b + self.c


def as_number(x) -> Number:
    """Coerce to an exact int or Fraction; floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, str):
        f = Fraction(x.strip())
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"exact rational required, got {type(x).__name__}")


def make_triple(values) -> Triple:
    a, b, c = values
    return Triple(as_number(a), as_number(b), as_number(c))


IDENTITY: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

A0: Mat3 = ((0, 0, 1), (1, 0, 0), (0, 1, 1))
A1: Mat3 = ((1, 0, 1), (0, 1, 0), (0, 0, 1))

# Columns are the vertices v1, v2, v3 of the standard triangle.
V: Mat3 = ((1, 1, 1), (0, 1, 1), (0, 0, 1))


_PERM_ROWS = {
    "e": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "12": ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    "13": ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    "23": ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
    "123": ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    "132": ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
}


class Perm3(Enum):
    """An element of S3, named in cycle notation without parentheses."""

    E = "e"
    P12 = "12"
    P13 = "13"
    P23 = "23"
    P123 = "123"
    P132 = "132"

    @property
    def matrix(self) -> Mat3:
        return _PERM_ROWS[self.value]

    @property
    def inverse(self) -> "Perm3":
        return perm_from_matrix(transpose(self.matrix))

    def __mul__(self, other: "Perm3") -> "Perm3":
        # product of the permutation matrices, left to right
        return perm_from_matrix(mat_mul(self.matrix, other.matrix))

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Perm3":
        tag = text.strip().strip("()")
        if tag in ("", "id", "1"):
            tag = "e"
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown permutation {text!r}; expected one of "
                             f"{', '.join(p.value for p in cls)}") from None


PERMS = tuple(Perm3)
_BY_MATRIX = {p.matrix: p for p in PERMS}


def perm_matrix(p: Union[Perm3, str]) -> Mat3:
    if isinstance(p, str):
        p = Perm3.parse(p)
    return p.matrix


def perm_from_matrix(m: Mat3) -> Perm3:
    try:
        return _BY_MATRIX[m]
    except KeyError:
        raise ValueError(f"not a permutation matrix: {m}") from None


def mat_mul(A: Mat3, B: Mat3) -> Mat3:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_add(A: Mat3, B: Mat3) -> Mat3:
    return tuple(tuple(A[i][j] + B[i][j] for j in range(3)) for i in range(3))


def mat_pow(A: Mat3, n: int) -> Mat3:
    if n < 0:
        return mat_pow(unimodular_inverse(A), -n)
    result, base = IDENTITY, A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def mat_chain(*mats: Mat3) -> Mat3:
    result = IDENTITY
    for m in mats:
        result = mat_mul(result, m)
    return result


def transpose(A: Mat3) -> Mat3:
    return tuple(tuple(A[i][j] for i in range(3)) for j in range(3))


def det(A: Mat3):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def adjugate(A: Mat3) -> Mat3:
    def minor(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]

    # adj[i][j] is the (j, i) cofactor
    return tuple(
        tuple((-1) ** (i + j) * minor(j, i) for j in range(3)) for i in range(3)
    )


def unimodular_inverse(A: Mat3) -> Mat3:
    """Exact integer inverse of a matrix with determinant +1 or -1."""
    d = det(A)
    if d not in (1, -1):
        raise NotUnimodularError(f"determinant {d} is not a unit")
    adj = adjugate(A)
    return tuple(tuple(d * x for x in row) for row in adj)


def rational_inverse(A) -> tuple:
    """Inverse over the rationals, for matrices that are not unimodular."""
    d = det(A)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    adj = adjugate(A)
    return tuple(tuple(Fraction(x, 1) / d for x in row) for row in adj)


def row_apply(t, M: Mat3) -> Triple:
    """The row vector ``t`` multiplied on the right by ``M``."""
    a, b, c = t
    return Triple(
        a * M[0][0] + b * M[1][0] + c * M[2][0],
        a * M[0][1] + b * M[1][1] + c * M[2][1],
        a * M[0][2] + b * M[1][2] + c * M[2][2],
    )


def col_apply(M: Mat3, v) -> tuple:
    """``M @ v`` for a column vector ``v``."""
    return tuple(sum(M[i][k] * v[k] for k in range(3)) for i in range(3))


def column(M: Mat3, j: int) -> tuple:
    return (M[0][j], M[1][j], M[2][j])


def char_poly(M: Mat3) -> tuple:
    """Coefficients (1, c2, c1, c0) of det(xI - M), highest degree first."""
    tr = M[0][0] + M[1][1] + M[2][2]
    minors = (M[0][0] * M[1][1] - M[0][1] * M[1][0]
              + M[0][0] * M[2][2] - M[0][2] * M[2][0]
              + M[1][1] * M[2][2] - M[1][2] * M[2][1])
    return (1, -tr, minors, -det(M))
