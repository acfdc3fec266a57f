"""Per-level statistics: maxima, minima, their positions, and level sums."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, List, Optional, Tuple

import numpy as np

from ._config import check_depth
from .algebra import Perm3, Triple, make_triple, mat_add, row_apply
from .family import TripMap
from .stern import ONES, iter_level_arrays
from . import tables

EXHAUSTIVE_DEPTH_CAP = 25
PATH_DEPTH_CAP = 60


class InvariantViolation(AssertionError):
    """Two independent computations of the same quantity disagree."""


class PathPolicy(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    ALTERNATE = "alt"  # left first, then right, left, ...

    def word(self, length: int) -> Tuple[int, ...]:
        if self is PathPolicy.LEFT:
            return (0,) * length
        if self is PathPolicy.RIGHT:
            return (1,) * length
        return tuple(i % 2 for i in range(length))

    def offset(self, depth: int) -> int:
        """Position of the path node inside level ``depth``."""
        j = 0
        for bit in self.word(depth - 1):
            j = 2 * j + bit
        return j


class MinSide(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


@dataclass
class LevelStats:
    depth: int
    max_value: object
    max_positions: List[Tuple[int, int]]  # (offset in level, component 0..2)
    min_value: object
    min_positions: List[Tuple[int, int]]
    sums: Tuple  # (S1, S2, S3)

    @property
    def total(self):
        return sum(self.sums)

    def max_offsets(self) -> List[int]:
        return sorted({j for j, _ in self.max_positions})

    def min_offsets(self) -> List[int]:
        return sorted({j for j, _ in self.min_positions})


def _py(x):
    return x if isinstance(x, (int, Fraction)) else int(x)


def _stats(depth: int, arr: np.ndarray) -> LevelStats:
    mx = arr.max()
    mn = arr.min()
    max_pos = [(int(j), int(i)) for j, i in zip(*np.nonzero(arr == mx))]
    min_pos = [(int(j), int(i)) for j, i in zip(*np.nonzero(arr == mn))]
    sums = tuple(_py(s) for s in arr.sum(axis=0))
    return LevelStats(depth, _py(mx), max_pos, _py(mn), min_pos, sums)


def iter_level_stats(tmap: TripMap, depth: int, seed=ONES, *, cap=None):
    check_depth(depth, EXHAUSTIVE_DEPTH_CAP, cap)
    for k, arr in enumerate(iter_level_arrays(tmap, depth, seed, cap=depth)):
        yield _stats(k + 1, arr)


def level_stats(tmap: TripMap, n: int, seed=ONES, *, cap=None) -> LevelStats:
    """Exhaustive scan of level ``n``."""
    stats = None
    for stats in iter_level_stats(tmap, n, seed, cap=cap):
        pass
    return stats


def maxima_sequence(tmap: TripMap, depth: int, seed=ONES, *, cap=None) -> List:
    """``m_1, ..., m_depth`` by exhaustive scan."""
    return [s.max_value for s in iter_level_stats(tmap, depth, seed, cap=cap)]


def minima_sequence(tmap: TripMap, depth: int, seed=ONES, *, cap=None) -> List:
    return [s.min_value for s in iter_level_stats(tmap, depth, seed, cap=cap)]


def path_triples(tmap: TripMap, policy: PathPolicy, depth: int, seed=ONES,
                 *, cap=None) -> List[Triple]:
    """The triples on a policy path at levels 1..depth (linear cost)."""
    check_depth(depth, PATH_DEPTH_CAP, cap)
    word = policy.word(depth - 1)
    t = make_triple(seed)
    out = [t]
    for bit in word:
        t = row_apply(t, tmap.F1 if bit else tmap.F0)
        out.append(t)
    return out


def path_maxima(tmap: TripMap, policy: PathPolicy, depth: int, seed=ONES, *, cap=None) -> List:
    return [max(t) for t in path_triples(tmap, policy, depth, seed, cap=cap)]


@dataclass
class PathReport:
    tmap: TripMap
    path: str
    levels: List[bool]
    values: List = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(self.levels)

    def to_dict(self) -> dict:
        return {"map": self.tmap.name, "path": self.path, "ok": self.ok,
                "levels": self.levels, "values": [str(v) for v in self.values],
                "note": self.note}


def verify_max_path(tmap: TripMap, policy: PathPolicy, depth: int, seed=ONES,
                    *, cap=None) -> PathReport:
    """Per level: does the policy-path node attain the level maximum?"""
    policy = PathPolicy(policy)
    ok, values = [], []
    for stats in iter_level_stats(tmap, depth, seed, cap=cap):
        values.append(stats.max_value)
        ok.append(policy.offset(stats.depth) in stats.max_offsets())
    return PathReport(tmap, f"max/{policy.value}", ok, values)


def verify_min_path(tmap: TripMap, side: MinSide, depth: int, seed=ONES,
                    *, cap=None) -> PathReport:
    """Per level: do the left-most / right-most nodes attain the level minimum?"""
    side = MinSide(side)
    ok, values = [], []
    for stats in iter_level_stats(tmap, depth, seed, cap=cap):
        offsets = stats.min_offsets()
        left = 0 in offsets
        right = (2 ** (stats.depth - 1) - 1) in offsets
        hit = {MinSide.LEFT: left, MinSide.RIGHT: right, MinSide.BOTH: left and right}[side]
        ok.append(hit)
        values.append(stats.min_value)
    report = PathReport(tmap, f"min/{side.value}", ok, values)
    if make_triple(seed) == ONES:
        report.note = "min value 1 at every level" if all(v == 1 for v in values) \
            else "min value differs from 1"
    return report


@dataclass(frozen=True)
class LevelSums:
    S1: object
    S2: object
    S3: object

    @property
    def S(self):
        return self.S1 + self.S2 + self.S3

    def as_tuple(self):
        return (self.S1, self.S2, self.S3, self.S)


def sums_by_recurrence(tmap: TripMap, depth: int, seed=ONES) -> List[LevelSums]:
    """``(S1, S2, S3)(n) = (S1, S2, S3)(n-1) (F0 + F1)``, for n = 1..depth."""
    M = mat_add(tmap.F0, tmap.F1)
    v = make_triple(seed)
    out = [LevelSums(*v)]
    for _ in range(depth - 1):
        v = row_apply(v, M)
        out.append(LevelSums(*v))
    return out


def sums_direct(tmap: TripMap, depth: int, seed=ONES, *, cap=None) -> List[LevelSums]:
    return [LevelSums(*s.sums) for s in iter_level_stats(tmap, depth, seed, cap=cap)]


def level_sums_table(tmap: TripMap, depth: int, seed=ONES, *, cap=None) -> List[LevelSums]:
    """Level sums for n = 1..depth, computed both ways; raises on disagreement."""
    direct = sums_direct(tmap, depth, seed, cap=cap)
    rec = sums_by_recurrence(tmap, depth, seed)
    for n, (d, r) in enumerate(zip(direct, rec), start=1):
        if d != r:
            raise InvariantViolation(f"{tmap}: level {n} sums {d} (direct) != {r} (recurrence)")
    return rec


def level_sums(tmap: TripMap, n: int, seed=ONES, *, cap=None) -> LevelSums:
    return level_sums_table(tmap, n, seed, cap=cap)[-1]


def sum_sequence(tmap: TripMap, depth: int, seed=ONES) -> List:
    """``S(1), ..., S(depth)`` from the vector recurrence."""
    return [s.S for s in sums_by_recurrence(tmap, depth, seed)]


@dataclass
class RatioEstimate:
    ratio: float          # S(depth) / S(depth - 1)
    eigenvalue: float     # power-iteration estimate of the dominant eigenvalue
    s2_over_s1: float
    s3_over_s2: float


def power_iteration(M, iterations: int = 64) -> Fraction:
    """Dominant eigenvalue estimate of a non-negative integer matrix.

    Iterates the integer row vector ``v <- v M``, dividing out the gcd of
    its entries each step, and returns the exact ratio ``sum(v M) / sum(v)``.
    """
    v = (1, 1, 1)
    est = Fraction(0)
    for _ in range(iterations):
        w = row_apply(v, M)
        est = Fraction(sum(w), sum(v))
        g = gcd(*w) or 1
        v = tuple(x // g for x in w)
    return est


def sum_ratio_estimate(tmap: TripMap, depth: int = 30) -> RatioEstimate:
    if depth < 4:
        raise ValueError("depth must be at least 4")
    rec = sums_by_recurrence(tmap, depth)
    last, prev = rec[-1], rec[-2]
    eig = power_iteration(mat_add(tmap.F0, tmap.F1))
    return RatioEstimate(
        ratio=float(Fraction(last.S, prev.S)),
        eigenvalue=float(eig),
        s2_over_s1=float(Fraction(last.S2, last.S1)) if last.S1 else float("nan"),
        s3_over_s2=float(Fraction(last.S3, last.S2)) if last.S2 else float("nan"),
    )


def conjugate_map(tmap: TripMap, kappa: Perm3) -> TripMap:
    """``(kappa sigma, tau0 kappa^-1, tau1 kappa^-1)``: same maxima and minima."""
    kappa = Perm3.parse(str(kappa))
    kinv = kappa.inverse
    return TripMap(kappa * tmap.sigma, tmap.tau0 * kinv, tmap.tau1 * kinv)


def base_form(tmap: TripMap) -> Tuple[TripMap, Perm3]:
    """The (e, tau0', tau1') map and kappa with ``tmap = conjugate_map(base, kappa)``."""
    kappa = tmap.sigma
    base = TripMap(Perm3.E, tmap.tau0 * kappa, tmap.tau1 * kappa)
    return base, kappa


# -- generalized seeds -------------------------------------------------------

@dataclass(frozen=True)
class PathClaim:
    kind: str                 # "max" or "min"
    path: str                 # "left" or "right"
    condition: Callable       # predicate on the base-form seed (a, b, c)
    value: Optional[Callable] = None  # expected min value from the base seed
    description: str = ""


def _chain_geq(order: str):
    """Predicate ``x >= y >= z > 0`` for components named in ``order``."""
    def pred(s):
        v = dict(zip("abc", s))
        x, y, z = (v[ch] for ch in order)
        return x >= y >= z > 0
    return pred


def _chain_leq(order: str):
    def pred(s):
        v = dict(zip("abc", s))
        x, y, z = (v[ch] for ch in order)
        return 0 < x <= y <= z
    return pred


def _strict_min(ch: str):
    i = "abc".index(ch)

    def pred(s):
        return all(s[i] < s[j] for j in range(3) if j != i)
    return pred


def _component(ch: str):
    i = "abc".index(ch)
    return lambda s: s[i]


def _positive(pred):
    return lambda s: all(x > 0 for x in s) and pred(s)


def _generalized_claims(base: TripMap) -> List[PathClaim]:
    name = base.name
    tau0, tau1 = str(base.tau0), str(base.tau1)
    claims = []
    if name in tables.GEN_MAX_RIGHT:
        claims.append(PathClaim("max", "right", _chain_geq("abc"),
                                description="a >= b >= c > 0"))
    if name in tables.GEN_MAX_LEFT:
        claims.append(PathClaim("max", "left", _chain_leq("abc"),
                                description="0 < a <= b <= c"))
    # minima on the left-most path, keyed by tau0
    if tau0 == "12":
        claims.append(PathClaim("min", "left", _positive(_strict_min("b")), _component("b"),
                                "b < a, b < c; minimum b"))
    elif tau0 == "123":
        claims.append(PathClaim("min", "left", _positive(_strict_min("b")), _component("b"),
                                "b < a, b < c; minimum b"))
        claims.append(PathClaim("min", "left", _positive(_strict_min("c")), _component("c"),
                                "c < a, c < b; minimum c"))
    elif tau0 == "23":
        claims.append(PathClaim("min", "left", _positive(_strict_min("c")), _component("c"),
                                "c < a, c < b; minimum c"))
    # minima on the right-most path, keyed by tau1
    if tau1 == "23":
        claims.append(PathClaim("min", "right", _positive(_strict_min("a")), _component("a"),
                                "a < b, a < c; minimum a"))
    elif tau1 == "13":
        claims.append(PathClaim("min", "right", _positive(_strict_min("b")), _component("b"),
                                "b < a, b < c; minimum b"))
    elif tau1 == "e":
        claims.append(PathClaim("min", "right", _positive(_strict_min("a")), _component("a"),
                                "a < b, a < c; minimum a"))
        claims.append(PathClaim("min", "right", _positive(_strict_min("b")), _component("b"),
                                "b < a, b < c; minimum b"))
    return claims


def generalized_claims(tmap: TripMap) -> List[PathClaim]:
    """Path claims for general seeds, for the base form of ``tmap``."""
    return _generalized_claims(base_form(tmap)[0])


class SeedConditionError(ValueError):
    pass


@dataclass
class GeneralizedReport:
    tmap: TripMap
    seed: Triple
    base_seed: Triple
    checks: List[Tuple[PathClaim, PathReport]]

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(r.ok for _, r in self.checks)

    def to_dict(self) -> dict:
        return {"map": self.tmap.name, "seed": [str(x) for x in self.seed], "ok": self.ok,
                "checks": [dict(r.to_dict(), claim=c.description) for c, r in self.checks]}


def verify_generalized_paths(tmap: TripMap, seed, depth: int, *, cap=None) -> GeneralizedReport:
    """Check every path claim whose seed condition holds for ``seed``.

    A map that is a conjugate ``(kappa, tau0 kappa^-1, tau1 kappa^-1)`` of a
    base map ``(e, tau0, tau1)`` produces, node for node, the base tree
    seeded with ``seed kappa`` with entries permuted, so conditions are
    tested on ``seed kappa``.
    """
    seed = make_triple(seed)
    base, kappa = base_form(tmap)
    base_seed = row_apply(seed, kappa.matrix)
    claims = [c for c in _generalized_claims(base) if c.condition(base_seed)]
    if not claims:
        raise SeedConditionError(
            f"seed {tuple(seed)} meets no seed-order condition for {tmap} "
            f"(conditions are stated on seed*kappa = {tuple(base_seed)} for kappa = {kappa})")
    stats = list(iter_level_stats(tmap, depth, seed, cap=cap))
    checks = []
    for claim in claims:
        policy = PathPolicy(claim.path)
        ok, values = [], []
        for s in stats:
            j = policy.offset(s.depth)
            if claim.kind == "max":
                ok.append(j in s.max_offsets())
                values.append(s.max_value)
            else:
                hit = j in s.min_offsets() and s.min_value == claim.value(base_seed)
                ok.append(hit)
                values.append(s.min_value)
        checks.append((claim, PathReport(tmap, f"{claim.kind}/{claim.path}", ok, values,
                                         claim.description)))
    return GeneralizedReport(tmap, seed, base_seed, checks)


def claimed_max_policy(tmap: TripMap) -> Optional[PathPolicy]:
    """The maxima path for seed (1,1,1) claimed for ``tmap``'s base form, if any."""
    name = base_form(tmap)[0].name
    if name in tables.MAX_PATH_RIGHT:
        return PathPolicy.RIGHT
    if name in tables.MAX_PATH_LEFT:
        return PathPolicy.LEFT
    if name in tables.MAX_PATH_ALTERNATE:
        return PathPolicy.ALTERNATE
    return None


def claimed_min_side(tmap: TripMap) -> Optional[MinSide]:
    name = base_form(tmap)[0].name
    if name in tables.MIN_PATH_LEFT:
        return MinSide.LEFT
    if name in tables.MIN_PATH_RIGHT:
        return MinSide.RIGHT
    if name in tables.MIN_PATH_BOTH:
        return MinSide.BOTH
    return None


def observed_argmax_paths(tmap: TripMap, depth: int, *, cap=None) -> List[List[str]]:
    """Words of every triple attaining the level maximum, as "0101" strings."""
    out = []
    for s in iter_level_stats(tmap, depth, cap=cap):
        width = s.depth - 1
        out.append([format(j, f"0{width}b") if width else "" for j in s.max_offsets()])
    return out
