"""TRIP-Stern sequences and the classical Stern diatomic baseline.

Indexing follows the flat convention ``a_1 = seed``, ``a_{2m} = a_m F0``,
``a_{2m+1} = a_m F1``.  Level n is the block ``2^(n-1) <= m < 2^n``, so the
seed alone is level 1.  The position of ``a_m`` inside its level, written
in binary with ``n - 1`` digits, is the word of F0/F1 choices leading to it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from ._config import check_depth
from .algebra import IDENTITY, Mat3, Triple, make_triple, mat_add, mat_mul, row_apply
from .family import TripMap

LEVEL_DEPTH_CAP = 30
ONES = Triple(1, 1, 1)

_INT64_LIMIT = 2**62


def word_of_index(m: int) -> Tuple[int, ...]:
    """Binary word of the flat index ``m >= 1`` (the bits after the leading 1)."""
    if m < 1:
        raise ValueError("indices start at 1")
    return tuple(int(b) for b in bin(m)[3:])


def index_of_word(word: Sequence[int]) -> int:
    m = 1
    for bit in word:
        m = 2 * m + (1 if bit else 0)
    return m


def trip_stern_term(tmap: TripMap, m: int, seed=ONES) -> Triple:
    """The m-th term, walking down from the root along the bits of ``m``."""
    return triangle_word(tmap, word_of_index(m), seed)


def triangle_word(tmap: TripMap, word: Sequence[int], seed=ONES) -> Triple:
    """``seed F_{i1} F_{i2} ... F_{in}``."""
    t = make_triple(seed)
    for bit in word:
        t = row_apply(t, tmap.F1 if bit else tmap.F0)
    return t


def word_matrix(tmap: TripMap, word: Sequence[int]) -> Mat3:
    m = IDENTITY
    for bit in word:
        m = mat_mul(m, tmap.F1 if bit else tmap.F0)
    return m


def _abs_sum_bound(tmap: TripMap, n: int, seed: Triple) -> int:
    """Upper bound on every entry magnitude in levels 1..n (matrices are 0/1)."""
    s = Triple(*(abs(x) for x in seed))
    M = mat_add(tmap.F0, tmap.F1)
    bound = sum(s)
    for _ in range(n - 1):
        s = row_apply(s, M)
        bound = max(bound, sum(s))
    return bound


def _dtype_for(tmap: TripMap, n: int, seed: Triple):
    if all(isinstance(x, int) for x in seed) and _abs_sum_bound(tmap, n, seed) < _INT64_LIMIT:
        return np.int64
    return object


def iter_level_arrays(tmap: TripMap, n: int, seed=ONES, *, cap=None) -> Iterator[np.ndarray]:
    """Yield levels 1..n as ``(2^(k-1), 3)`` arrays, one breadth-first sweep.

    Integer seeds use int64 whenever an a-priori bound proves no overflow
    can occur; otherwise entries are Python ints or Fractions (object dtype).
    """
    check_depth(n, LEVEL_DEPTH_CAP, cap)
    seed = make_triple(seed)
    dtype = _dtype_for(tmap, n, seed)
    F0 = np.array(tmap.F0, dtype=dtype)
    F1 = np.array(tmap.F1, dtype=dtype)
    cur = np.array([list(seed)], dtype=dtype)
    yield cur
    for _ in range(n - 1):
        nxt = np.empty((2 * len(cur), 3), dtype=dtype)
        nxt[0::2] = cur @ F0
        nxt[1::2] = cur @ F1
        cur = nxt
        yield cur


def _py(x):
    return x if isinstance(x, (int, Fraction)) else int(x)


@dataclass(frozen=True)
class Level:
    depth: int
    seed: Triple
    values: np.ndarray  # shape (2^(depth-1), 3)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> Triple:
        return Triple(*(_py(x) for x in self.values[j]))

    def __iter__(self):
        for j in range(len(self)):
            yield self[j]

    @property
    def triples(self) -> List[Triple]:
        return list(self)

    def index(self, j: int) -> int:
        """Flat sequence index of the j-th triple of this level."""
        return 2 ** (self.depth - 1) + j

    def word(self, j: int) -> Tuple[int, ...]:
        return word_of_index(self.index(j))


def level(tmap: TripMap, n: int, seed=ONES, *, cap=None) -> Level:
    if n < 1:
        raise ValueError("levels start at 1")
    seed = make_triple(seed)
    arr = None
    for arr in iter_level_arrays(tmap, n, seed, cap=cap):
        pass
    return Level(n, seed, arr)


def levels(tmap: TripMap, n: int, seed=ONES, *, cap=None) -> List[Level]:
    seed = make_triple(seed)
    return [Level(k + 1, seed, arr)
            for k, arr in enumerate(iter_level_arrays(tmap, n, seed, cap=cap))]


def generating_function_coefficients(tmap: TripMap, n: int, *, cap=None) -> Dict[int, Mat3]:
    """Coefficients of ``prod_{j<n} (F0 + F1 x^(2^j))`` with x commuting."""
    check_depth(n + 1, LEVEL_DEPTH_CAP, cap)
    poly: Dict[int, Mat3] = {0: IDENTITY}
    for j in range(n):
        factor = {0: tmap.F0, 2**j: tmap.F1}
        product: Dict[int, Mat3] = {}
        for e1, m1 in poly.items():
            for e2, m2 in factor.items():
                term = mat_mul(m1, m2)
                e = e1 + e2
                product[e] = mat_add(product[e], term) if e in product else term
        poly = product
    return poly


def level_via_generating_function(tmap: TripMap, n: int, seed=ONES, *, cap=None) -> Counter:
    """The multiset ``{seed B}`` over the 2^n coefficients B of the product.

    As multisets these equal ``level(tmap, n + 1)``; as ordered lists they
    differ by reversing the bits of the index.
    """
    seed = make_triple(seed)
    coeffs = generating_function_coefficients(tmap, n, cap=cap)
    return Counter(row_apply(seed, coeffs[k]) for k in sorted(coeffs))


def stern_diatomic(n: int) -> int:
    """Stern's sequence: a_1 = 1, a_2n = a_n, a_2n+1 = a_n + a_n+1."""
    if n < 1:
        raise ValueError("n must be positive")
    # Dijkstra's fusc: consume the bits of n from the least significant end
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def stern_brocot_pairs(n: int) -> List[Tuple[int, int]]:
    """Level n of the Stern-Brocot array as unreduced (numerator, denominator) pairs."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [(0, 1), (1, 1)]
    for _ in range(n):
        nxt = [row[0]]
        for (p, q), (r, s) in zip(row, row[1:]):
            nxt.append((p + r, q + s))
            nxt.append((r, s))
        row = nxt
    return row


def stern_brocot_level(n: int) -> List[Fraction]:
    return [Fraction(p, q) for p, q in stern_brocot_pairs(n)]
