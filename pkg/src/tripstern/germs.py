"""Forbidden triples of the (e,e,e) TRIP-Stern sequence.

P is the set of potential entries ``0 < a <= b < c`` together with
(1,1,1).  The inverse map G undoes one step of the tree: it sends ``X A1``
and ``X A0`` back to ``X``.  Iterating G from any point of P ends at a
germ, and the tree of a germ holds exactly the points of P that end there;
the TRIP-Stern set S is the tree of (1,1,1).

For the (e,e,e) map, ``F0 = A0`` and ``F1 = A1``:
``(a,b,c) A0 = (b, c, a+c)`` and ``(a,b,c) A1 = (a, b, a+c)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

from ._config import check_depth
from .algebra import A0, A1, Triple, make_triple, row_apply
from .stern import ONES, iter_level_arrays

CENSUS_DEPTH_CAP = 22


class Germ(NamedTuple):
    """The germ ``(a, a, b)``."""

    a: int
    b: int

    @property
    def triple(self) -> Triple:
        return Triple(self.a, self.a, self.b)


ROOT_GERM = Germ(1, 1)


def _ints(t) -> Triple:
    t = make_triple(t)
    if not all(isinstance(x, int) for x in t):
        raise TypeError(f"integer triple expected, got {t}")
    return t


def in_P(t) -> bool:
    a, b, c = _ints(t)
    return (a, b, c) == (1, 1, 1) or 0 < a <= b < c


def is_germ(t) -> bool:
    """``(a, a, b)`` in P with ``b < 2a``, or the degenerate case ``b = 2a``, ``a > 1``.

    The degenerate points (2,2,4), (3,3,6), ... admit neither branch of G,
    and their only preimages (a,a,a) lie outside P, so they root trees of
    their own exactly like the strict germs.
    """
    a, b, c = _ints(t)
    if not in_P((a, b, c)) or a != b:
        return False
    return c < 2 * a or (c == 2 * a and a > 1)


def g_case(t) -> str:
    """Which clause of G applies: "case1", "case2" or "germ"."""
    a, b, c = _ints(t)
    if not in_P((a, b, c)):
        raise ValueError(f"{(a, b, c)} is not in P")
    if a + b < c:
        return "case1"
    if a < b or (a == 1 and c - b == 1):
        return "case2"
    return "germ"


def inverse_step(t) -> Optional[Triple]:
    """G(t), or None where G is undefined (exactly at the germs)."""
    a, b, c = _ints(t)
    case = g_case((a, b, c))
    if case == "case1":
        return Triple(a, b, c - a)
    if case == "case2":
        return Triple(c - b, a, b)
    return None


def germ_chain(t) -> List[Triple]:
    """``t, G(t), G(G(t)), ...`` down to the germ; the entry sum drops at every step."""
    chain = [_ints(t)]
    while True:
        nxt = inverse_step(chain[-1])
        if nxt is None:
            return chain
        chain.append(nxt)


def germ_of(t) -> Germ:
    a, _, c = germ_chain(t)[-1]
    return Germ(a, c)


def in_S(t) -> bool:
    t = _ints(t)
    return in_P(t) and germ_of(t) == ROOT_GERM


def iter_P(bound: int) -> Iterator[Triple]:
    """Points of P with entry sum at most ``bound``, in lexicographic order."""
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            if a == b == 1 and bound >= 3:
                yield Triple(1, 1, 1)
            for c in range(b + 1, bound - a - b + 1):
                yield Triple(a, b, c)


def enumerate_forbidden(bound: int) -> List[Triple]:
    """Points of P with entry sum <= bound that never occur in the (e,e,e) sequence."""
    if bound < 3:
        raise ValueError("bound must be at least 3")
    return [t for t in iter_P(bound) if germ_of(t) != ROOT_GERM]


def enumerate_germs(bound: int) -> List[Germ]:
    return [Germ(t.a, t.c) for t in iter_P(bound) if is_germ(t)]


# -- tree oracles ------------------------------------------------------------------

def tree_elements(seed, bound: int) -> Set[Triple]:
    """Every ``seed W`` (W a word in A0, A1) with entry sum <= bound.

    Both matrices raise the entry sum of a positive triple, so pruning at
    the bound loses nothing.
    """
    seed = _ints(seed)
    if sum(seed) > bound:
        return set()
    seen = {seed}
    stack = [seed]
    while stack:
        t = stack.pop()
        for M in (A0, A1):
            u = row_apply(t, M)
            if sum(u) <= bound and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


@dataclass
class PartitionReport:
    bound: int
    germs: List[Germ]
    unassigned: List[Triple] = field(default_factory=list)
    multiply_assigned: List[Tuple[Triple, List[Germ]]] = field(default_factory=list)
    wrong_germ: List[Triple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.unassigned or self.multiply_assigned or self.wrong_germ)


def partition_check(bound: int) -> PartitionReport:
    """Every point of P up to the bound lies in exactly one germ tree, that of germ_of."""
    germs = enumerate_germs(bound)
    owner: Dict[Triple, List[Germ]] = {}
    for g in germs:
        for t in tree_elements(g.triple, bound):
            owner.setdefault(t, []).append(g)
    report = PartitionReport(bound, germs)
    for t in iter_P(bound):
        got = owner.get(t, [])
        if not got:
            report.unassigned.append(t)
        elif len(got) > 1:
            report.multiply_assigned.append((t, got))
        elif got[0] != germ_of(t):
            report.wrong_germ.append(t)
    return report


@dataclass
class CensusReport:
    depth: int
    counts: Counter
    positions: Dict[Triple, List[int]]
    violations: List[Tuple[Triple, int]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, t) -> int:
        return self.counts.get(make_triple(t), 0)


def multiplicity_census(depth: int, *, cap=None) -> CensusReport:
    """Occurrences of each triple in levels 1..depth of the (e,e,e) tree.

    Both children of the root equal (1,1,2), so the two subtrees below are
    identical and each repeated element has its twin on the same level:
    within any truncation every element but the root occurs exactly twice.
    """
    check_depth(depth, CENSUS_DEPTH_CAP, cap)
    from .family import TRIANGLE_MAP

    counts: Counter = Counter()
    positions: Dict[Triple, List[int]] = {}
    for k, arr in enumerate(iter_level_arrays(TRIANGLE_MAP, depth, ONES), start=1):
        start = 2 ** (k - 1)
        for j, row in enumerate(arr.tolist()):
            t = Triple(*row)
            counts[t] += 1
            if k <= 6:
                positions.setdefault(t, []).append(start + j)
    violations = [(t, n) for t, n in counts.items() if n != (1 if t == ONES else 2)]
    return CensusReport(depth, counts, positions, sorted(violations))
