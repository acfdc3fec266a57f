"""The 216 triangle partition maps and their digit expansions.

A map is named by three permutations ``(sigma, tau0, tau1)`` and divides the
triangle with ``F0 = sigma A0 tau0`` and ``F1 = sigma A1 tau1``.  The 1-D
Gauss map and the binary-word/continued-fraction correspondence live here
too, as the classical baseline.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

from .algebra import (
    A0,
    A1,
    V,
    Mat3,
    Perm3,
    PERMS,
    as_number,
    col_apply,
    mat_chain,
    mat_pow,
    unimodular_inverse,
)

log = logging.getLogger(__name__)

DEFAULT_K_CAP = 10**6


class TerminatedExpansion(ArithmeticError):
    """The point left the open triangle (e.g. y == 0); the algorithm stops."""


class NoContainingSubtriangle(ArithmeticError):
    """No subtriangle index up to the search cap contains the point."""


class BoundaryPointError(ArithmeticError):
    """Raised for boundary points when ``boundary="raise"``."""

    def __init__(self, candidates):
        super().__init__(f"point lies on the boundary of subtriangles {candidates}")
        self.candidates = candidates


@dataclass(frozen=True)
class TripMap:
    sigma: Perm3
    tau0: Perm3
    tau1: Perm3
    F0: Mat3 = field(init=False, repr=False, compare=False)
    F1: Mat3 = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("sigma", "tau0", "tau1"):
            value = getattr(self, name)
            if not isinstance(value, Perm3):
                object.__setattr__(self, name, Perm3.parse(str(value)))
        s = self.sigma.matrix
        object.__setattr__(self, "F0", mat_chain(s, A0, self.tau0.matrix))
        object.__setattr__(self, "F1", mat_chain(s, A1, self.tau1.matrix))

    @property
    def V(self) -> Mat3:
        return V

    @property
    def name(self) -> str:
        return f"{self.sigma},{self.tau0},{self.tau1}"

    def F(self, bit: int) -> Mat3:
        return self.F1 if bit else self.F0

    def __str__(self) -> str:
        return f"({self.name})"


def make_trip_map(sigma, tau0, tau1) -> TripMap:
    return TripMap(Perm3.parse(str(sigma)), Perm3.parse(str(tau0)), Perm3.parse(str(tau1)))


def parse_map(text: str) -> TripMap:
    """Parse ``"sigma,tau0,tau1"``, e.g. ``"e,13,123"``."""
    parts = [p for p in text.replace(" ", "").strip("()").split(",")]
    if len(parts) != 3:
        raise ValueError(f"a map is three permutations 'sigma,tau0,tau1', got {text!r}")
    return make_trip_map(*parts)


def all_maps() -> List[TripMap]:
    """All 216 maps, sigma outermost, in the order e,12,13,23,123,132."""
    return [TripMap(s, t0, t1) for s, t0, t1 in itertools.product(PERMS, repeat=3)]


def e_maps() -> List[TripMap]:
    """The 36 maps with sigma = e."""
    return [TripMap(Perm3.E, t0, t1) for t0, t1 in itertools.product(PERMS, repeat=2)]


MONKEMEYER = TripMap(Perm3.P13, Perm3.P132, Perm3.P132)
TRIANGLE_MAP = TripMap(Perm3.E, Perm3.E, Perm3.E)


def subtriangle_matrix(tmap: TripMap, n: int) -> Mat3:
    """``V F1^n F0``; its columns are the vertices of the n-th subtriangle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return mat_chain(V, mat_pow(tmap.F1, n), tmap.F0)


class RationalPoint(NamedTuple):
    x: Fraction
    y: Fraction


def make_point(x, y) -> RationalPoint:
    return RationalPoint(Fraction(as_number(x)), Fraction(as_number(y)))


def in_triangle(p) -> bool:
    x, y = p
    return 1 >= x >= y > 0


class DigitLocation(NamedTuple):
    digit: int
    candidates: tuple
    barycentric: tuple

    @property
    def on_boundary(self) -> bool:
        return len(self.candidates) > 1 or any(c == 0 for c in self.barycentric)


class TripStep(NamedTuple):
    digit: int
    image: RationalPoint


_V_INV = unimodular_inverse(V)


def locate_digit(tmap: TripMap, p, *, k_cap: int = DEFAULT_K_CAP,
                 boundary: str = "upper") -> DigitLocation:
    """Find the subtriangle index k containing ``p`` by exact sign tests.

    The cone coordinates of ``(1, x, y)`` with respect to the columns of
    ``V F1^k F0`` are ``F0^-1 F1^-k V^-1 (1, x, y)``; the point lies in the
    closed k-th subtriangle iff all three are non-negative.  A point on an
    edge shared by consecutive subtriangles is closed-member of both.
    ``boundary`` picks the larger index ("upper", which agrees with the
    floor formula of the triangle map), the smaller ("lower"), or raises.
    """
    x, y = p
    if not (1 >= x >= y and y > 0):
        raise TerminatedExpansion(f"point ({x}, {y}) is not in the open triangle")
    F0_inv = unimodular_inverse(tmap.F0)
    F1_inv = unimodular_inverse(tmap.F1)
    q = col_apply(_V_INV, (Fraction(1), Fraction(x), Fraction(y)))
    found = []
    coords = {}
    for k in range(k_cap + 1):
        lam = col_apply(F0_inv, q)
        if all(c >= 0 for c in lam):
            found.append(k)
            coords[k] = lam
        elif found:
            break
        q = col_apply(F1_inv, q)
    if not found:
        raise NoContainingSubtriangle(f"no subtriangle with k <= {k_cap} contains ({x}, {y})")
    candidates = tuple(found)
    if len(candidates) > 1:
        log.debug("boundary point (%s, %s) shared by subtriangles %s", x, y, candidates)
        if boundary == "raise":
            raise BoundaryPointError(candidates)
    k = candidates[0] if boundary == "lower" else candidates[-1]
    return DigitLocation(k, candidates, coords[k])


def trip_apply(tmap: TripMap, p, *, k_cap: int = DEFAULT_K_CAP,
               boundary: str = "upper") -> TripStep:
    """One step of the triangle partition map: the digit and the image point."""
    p = make_point(*p)
    loc = locate_digit(tmap, p, k_cap=k_cap, boundary=boundary)
    b0, b1, b2 = col_apply(V, loc.barycentric)
    return TripStep(loc.digit, RationalPoint(b1 / b0, b2 / b0))


def triangle_map_closed_form(p) -> TripStep:
    """The (e,e,e) map via its floor formula, for cross-checking."""
    x, y = make_point(*p)
    if not (1 >= x >= y > 0):
        raise TerminatedExpansion(f"point ({x}, {y}) is not in the open triangle")
    k = (1 - x) // y
    return TripStep(int(k), RationalPoint(y / x, (1 - x - k * y) / x))


class TripExpansion(NamedTuple):
    digits: List[int]
    stop: Optional[str]  # None, "terminated" or "no-subtriangle"


def trip_expansion(tmap: TripMap, p, max_digits: int, *, k_cap: int = DEFAULT_K_CAP,
                   boundary: str = "upper") -> TripExpansion:
    p = make_point(*p)
    digits: List[int] = []
    while len(digits) < max_digits:
        try:
            k, p = trip_apply(tmap, p, k_cap=k_cap, boundary=boundary)
        except TerminatedExpansion:
            return TripExpansion(digits, "terminated")
        except NoContainingSubtriangle:
            return TripExpansion(digits, "no-subtriangle")
        digits.append(k)
    if len(digits) == max_digits and max_digits > 0 and not in_triangle(p):
        return TripExpansion(digits, "terminated")
    return TripExpansion(digits, None)


def trip_digits(tmap: TripMap, p, max_digits: int, **kwargs) -> List[int]:
    """The TRIP sequence of ``p``, truncated at ``max_digits`` or termination."""
    return trip_expansion(tmap, p, max_digits, **kwargs).digits


def word_digits(word: Sequence[int]) -> List[int]:
    """Run lengths k_j of a word ``1^k0 0 1^k1 0 ...``; a trailing run is dropped."""
    out, run = [], 0
    for bit in word:
        if bit:
            run += 1
        else:
            out.append(run)
            run = 0
    return out


def cf_from_binary_word(word: Sequence[int]) -> List[int]:
    """Partial quotients k_j + 1 of the interval address ``1^k0 0 1^k1 0 ...``."""
    return [k + 1 for k in word_digits(word)]


class GaussStep(NamedTuple):
    digit: int
    image: Fraction


def gauss_step(x) -> GaussStep:
    """``x`` in (1/(k+1), 1/k] maps to ``(1 - kx)/x``; image 0 means stop."""
    x = Fraction(as_number(x))
    if not 0 < x <= 1:
        raise ValueError(f"{x} is not in (0, 1]")
    k = int(1 / x)  # floor, since 1/x > 0
    return GaussStep(k, (1 - k * x) / x)


def gauss_digits(x, max_digits: int = 64) -> List[int]:
    """Continued fraction digits of ``x`` in (0, 1] via the Gauss map."""
    digits = []
    x = Fraction(as_number(x))
    while x and len(digits) < max_digits:
        k, x = gauss_step(x)
        digits.append(k)
    return digits
