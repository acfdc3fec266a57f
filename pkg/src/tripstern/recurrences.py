"""Exact linear-recurrence fitting and classification of the 216 maps.

All fitting is Gaussian elimination over the rationals; there is no
floating point anywhere except in the final value of ``dominant_root``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Triple, char_poly, mat_add
from .family import TripMap, all_maps, e_maps, parse_map
from .levels import base_form, maxima_sequence, sum_sequence
from . import tables

DEFAULT_MAX_ORDER = 6
UNIT_SEEDS = (Triple(1, 0, 0), Triple(0, 1, 0), Triple(0, 0, 1))


class InsufficientTerms(ValueError):
    pass


def _exact(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class Recurrence:
    """``s(n) = c1 s(n-1) + ... + cr s(n-r)``; order 0 means s is identically 0."""

    coefficients: Tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(_exact(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def next_term(self, history: Sequence):
        return sum(c * history[-1 - i] for i, c in enumerate(self.coefficients))

    def extend(self, initial: Sequence, length: int) -> List:
        out = list(initial)
        while len(out) < length:
            out.append(self.next_term(out))
        return out

    def characteristic_polynomial(self) -> Tuple:
        """``x^r - c1 x^(r-1) - ... - cr``, highest degree first."""
        return (1,) + tuple(-c for c in self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "S(n) = 0"
        terms = []
        for i, c in enumerate(self.coefficients, start=1):
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag} "
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{coef}S(n-{i})"))
        text = " ".join(f"{s} {t}" for s, t in terms)
        return "S(n) = " + (text[2:] if text.startswith("+") else "-" + text[2:])


def _solve(rows: List[List[Fraction]], rhs: List[Fraction], nvars: int) -> Optional[List[Fraction]]:
    """A solution of the linear system (free variables set to 0), or None."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(nvars):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        m[row] = [x / p for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    for i in range(row, len(m)):
        if m[i][-1] != 0:
            return None
    sol = [Fraction(0)] * nvars
    for i, col in enumerate(pivots):
        sol[col] = m[i][-1]
    return sol


def _equations(seq: Sequence[Fraction], r: int, stop: int):
    rows, rhs = [], []
    for n in range(r, stop):
        rows.append([seq[n - i] for i in range(1, r + 1)])
        rhs.append(seq[n])
    return rows, rhs


def verify_recurrence(seq: Sequence, rec: Recurrence) -> bool:
    """True iff the relation holds exactly at every index ``n >= order``."""
    r = rec.order
    if len(seq) <= r:
        raise InsufficientTerms(f"need more than {r} terms")
    return all(seq[n] == rec.next_term(seq[:n]) for n in range(r, len(seq)))


def fit_common_recurrence(sequences: Sequence[Sequence], max_order: int = DEFAULT_MAX_ORDER,
                          *, window: Optional[int] = None) -> Optional[Recurrence]:
    """The minimal-order recurrence satisfied by every sequence given.

    For each order r, the coefficients are solved from the first ``window``
    terms (default ``2 max_order + 2``) of every sequence at once, then
    checked against all remaining terms.
    """
    seqs = [[Fraction(x) for x in s] for s in sequences]
    need = 2 * max_order + 2
    if window is None:
        window = need
    short = [len(s) for s in seqs if len(s) < need]
    if short:
        raise InsufficientTerms(f"prefix of {min(short)} terms; order {max_order} needs {need}")
    if all(x == 0 for s in seqs for x in s):
        return Recurrence(())
    for r in range(1, max_order + 1):
        rows, rhs = [], []
        for s in seqs:
            a, b = _equations(s, r, min(window, len(s)))
            rows += a
            rhs += b
        sol = _solve(rows, rhs, r)
        if sol is None:
            continue
        rec = Recurrence(tuple(sol))
        if all(verify_recurrence(s, rec) for s in seqs):
            return rec
    return None


def fit_min_recurrence(prefix: Sequence, max_order: int = DEFAULT_MAX_ORDER) -> Optional[Recurrence]:
    """Minimal exact recurrence of one sequence, or None if none has order <= max_order."""
    return fit_common_recurrence([prefix], max_order)


def max_order_for(length: int) -> int:
    return min(DEFAULT_MAX_ORDER, (length - 2) // 2)


# -- roots ---------------------------------------------------------------------

def _trim(p):
    p = [Fraction(c) for c in p]
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return p


def _peval(p, x):
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _pderiv(p):
    n = len(p) - 1
    return _trim([c * (n - i) for i, c in enumerate(p[:-1])]) if n else [Fraction(0)]


def _pdivmod(a, b):
    a, b = _trim(a), _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and any(r):
        k = r[0] / b[0]
        shift = len(r) - len(b)
        q[len(q) - 1 - shift] = k
        for i, c in enumerate(b):
            r[i] -= k * c
        r.pop(0)
        if not r:
            r = [Fraction(0)]
    return _trim(q), _trim(r)


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while any(b):
        _, r = _pdivmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def _sturm_chain(p):
    chain = [p, _pderiv(p)]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, r = _pdivmod(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x) -> int:
    signs = [v for v in (_peval(p, x) for p in chain) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def real_roots(coeffs, width: float = 1e-10) -> List[float]:
    """All real roots of a rational polynomial, isolated by Sturm sequences and bisected."""
    p = _trim(coeffs)
    if len(p) == 1:
        return []
    g = _pgcd(p, _pderiv(p))
    p, _ = _pdivmod(p, g)  # squarefree part
    bound = 1 + max(abs(c / p[0]) for c in p[1:]) if len(p) > 1 else Fraction(1)
    chain = _sturm_chain(p)
    w = Fraction(width)

    def count(lo, hi):
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    roots = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            roots.append(_bisect(p, lo, hi, w))
            continue
        mid = (lo + hi) / 2
        if _peval(p, mid) == 0:
            roots.append(mid)
            eps = (hi - lo) / 2**20
            while count(mid - eps, mid + eps) > 1:
                eps /= 2
            stack += [(lo, mid - eps), (mid + eps, hi)]
        else:
            stack += [(lo, mid), (mid, hi)]
    return sorted(float(r) for r in roots)


def _bisect(p, lo, hi, width):
    """Single root in (lo, hi]; Sturm counts use half-open intervals."""
    if _peval(p, hi) == 0:
        return hi
    flo = _peval(p, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = _peval(p, mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def dominant_root(obj, width: float = 1e-10) -> float:
    """Largest-modulus real root of a polynomial (coefficients, highest first)
    or of the characteristic polynomial of a 3x3 matrix."""
    if len(obj) == 3 and all(isinstance(row, (tuple, list)) and len(row) == 3 for row in obj):
        coeffs = char_poly(obj)
    else:
        coeffs = obj
    roots = real_roots(coeffs, width)
    if not roots:
        raise ValueError("polynomial has no real roots")
    return max(roots, key=abs)


def map_dominant_root(tmap: TripMap) -> float:
    return dominant_root(mat_add(tmap.F0, tmap.F1))


# -- classification --------------------------------------------------------------

@dataclass
class ClassReport:
    what: str
    depth: int
    groups: List[dict] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.groups)

    def group_of(self, name: str) -> dict:
        for g in self.groups:
            if name in g["maps"]:
                return g
        raise KeyError(name)

    def by_map(self) -> Dict[str, int]:
        return {m: i for i, g in enumerate(self.groups) for m in g["maps"]}

    def to_dict(self) -> dict:
        return {"what": self.what, "depth": self.depth, "group_count": self.count,
                "groups": self.groups, "by_map": dict(sorted(self.by_map().items()))}


def _parallel_map(fn, items, jobs: int):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _sum_profile(args):
    name, depth = args
    tmap = parse_map(name)
    return name, sum_sequence(tmap, depth), [sum_sequence(tmap, depth, s) for s in UNIT_SEEDS]


def _rec_key(rec: Optional[Recurrence]):
    return None if rec is None else [str(c) if isinstance(c, Fraction) else c
                                     for c in rec.coefficients]


def classify_level_sums(depth: int = 12, maps: Optional[Iterable[TripMap]] = None,
                        *, extra: int = 20, jobs: int = 1) -> ClassReport:
    """Group maps by their level sums for the seed (1,1,1).

    Each class gets the minimal recurrence satisfied jointly by every map
    in it and the three unit seeds, fitted on the first ``depth`` levels and
    verified on ``extra`` more.  By linearity it then holds for every seed.
    Per map, the minimal recurrence can be a proper factor of the class one.
    """
    if depth < 12:
        raise ValueError("depth must be at least 12")
    maps = list(maps) if maps is not None else e_maps()
    total = depth + extra
    profiles = _parallel_map(_sum_profile, [(m.name, total) for m in maps], jobs)
    order = max_order_for(depth)
    buckets: Dict[tuple, list] = {}
    for name, ones, seqs in profiles:
        buckets.setdefault(tuple(ones[:depth]), []).append((name, ones, seqs))
    groups = []
    for members in buckets.values():
        all_seqs = [s for _, _, seqs in members for s in seqs]
        rec = fit_common_recurrence([s[:depth] for s in all_seqs], order)
        verified = rec is not None and all(
            verify_recurrence(s, rec) for _, ones, seqs in members for s in seqs + [ones])
        per_map = {}
        for name, _, seqs in members:
            own = fit_common_recurrence([s[:depth] for s in seqs], order)
            per_map[name] = _rec_key(own)
        groups.append({"recurrence": _rec_key(rec),
                       "relation": str(rec) if rec else None,
                       "maps": [name for name, _, _ in members],
                       "sums": [str(x) for x in members[0][1][:depth]],
                       "verified_through": total if verified else None,
                       "per_map_minimal": per_map})
    return ClassReport("sums", depth, groups)


def _maxima_profile(args):
    name, depth = args
    return name, maxima_sequence(parse_map(name), depth)


def classify_maxima(depth: int = 12, maps: Optional[Iterable[TripMap]] = None,
                    *, jobs: int = 1) -> ClassReport:
    """Group maps by their raw sequence of level maxima (exhaustive scans).

    Any recurrence reported for a group is an empirical fit to the computed
    prefix, not a proof.
    """
    if depth < 11:
        raise ValueError("depth must be at least 11")
    maps = list(maps) if maps is not None else all_maps()
    profiles = _parallel_map(_maxima_profile, [(m.name, depth) for m in maps], jobs)
    groups: Dict[tuple, dict] = {}
    for name, seq in profiles:
        g = groups.setdefault(tuple(seq), {"maxima": list(seq), "maps": []})
        g["maps"].append(name)
    order = max_order_for(depth)
    for g in groups.values():
        rec = fit_min_recurrence(g["maxima"], order)
        g["recurrence"] = _rec_key(rec)
        g["relation"] = str(rec).replace("S(", "m(") if rec else None
        g["status"] = "empirical"
        g["representatives"] = [n for n in g["maps"] if n.startswith("e,")]
    ordered = sorted(groups.values(), key=lambda g: g["maxima"])
    return ClassReport("maxima", depth, ordered)


def table3_grouping() -> Dict[tuple, set]:
    return {rec: set(names) for rec, names in tables.TABLE3}


def compare_sum_grouping(report: ClassReport) -> List[str]:
    """Differences between a sums report over the 36 (e, ., .) maps and Table 3."""
    expected = table3_grouping()
    diffs = []
    found = {tuple(g["recurrence"] or ()): set(g["maps"]) for g in report.groups}
    for rec, names in expected.items():
        got = found.get(rec)
        if got is None:
            diffs.append(f"missing group {rec}: {sorted(names)}")
        elif got != names:
            diffs.append(f"group {rec}: expected {sorted(names)}, got {sorted(got)}")
    for rec in found:
        if rec not in expected:
            diffs.append(f"unexpected group {rec}: {sorted(found[rec])}")
    return diffs


@dataclass
class GeneralizedSumsReport:
    tmap: TripMap
    depth: int
    minimal: Optional[Recurrence]    # fitted jointly on the seeds
    expected: Optional[Recurrence]   # the table's recurrence for this map's class
    per_seed: List[bool]             # expected recurrence holds for each seed

    @property
    def ok(self) -> bool:
        return self.expected is not None and all(self.per_seed)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"map": self.tmap.name, "depth": self.depth, "ok": self.ok,
                "minimal": _rec_key(self.minimal), "expected": _rec_key(self.expected),
                "per_seed": self.per_seed}


def expected_sum_recurrence(tmap: TripMap) -> Optional[Recurrence]:
    name = base_form(tmap)[0].name
    for rec, names in tables.TABLE5:
        if name in names:
            return Recurrence(rec)
    return None


def verify_generalized_sums(tmap: TripMap, depth: int = 12,
                            seeds: Sequence = UNIT_SEEDS) -> GeneralizedSumsReport:
    """Check the table recurrence on S(n) for each seed, and fit the minimal one.

    Sums are linear in the seed, so three independent seeds settle every seed.
    """
    if depth < 12:
        raise ValueError("depth must be at least 12")
    seqs = [sum_sequence(tmap, depth, s) for s in seeds]
    minimal = fit_common_recurrence(seqs, max_order_for(depth))
    expected = expected_sum_recurrence(tmap)
    per_seed = [expected is not None and verify_recurrence(s, expected) for s in seqs]
    return GeneralizedSumsReport(tmap, depth, minimal, expected, per_seed)


def oeis_crosscheck(rec: Recurrence, entry: dict) -> bool:
    return tuple(Fraction(c) for c in entry["recurrence"]) == tuple(
        Fraction(c) for c in rec.coefficients)


def lookup_oeis(rec: Recurrence, kind: str = "level_sums") -> Optional[dict]:
    for entry in tables.oeis_catalog()[kind]:
        if oeis_crosscheck(rec, entry):
            return entry
    return None
