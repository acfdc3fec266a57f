"""Subdivisions of the triangle by a TRIP map, with SVG and JSON output.

The cell of a word ``i1 ... in`` is spanned by the columns of
``V F_{i1} ... F_{in}``, projected by ``pi(b0, b1, b2) = (b1/b0, b2/b0)``.
Its label is the top row of that matrix, which is the sequence entry
reached by the same word from (1,1,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from ._config import check_depth
from .algebra import Triple, column, mat_mul
from .family import RationalPoint, TripMap

SUBDIVISION_DEPTH_CAP = 12
VIEWPORT = 1000

PlanePoint = RationalPoint


def project_pi(v: Sequence) -> PlanePoint:
    b0, b1, b2 = v
    if b0 == 0:
        raise ZeroDivisionError("projection needs a nonzero first coordinate")
    return PlanePoint(Fraction(b1, 1) / b0, Fraction(b2, 1) / b0)


@dataclass(frozen=True)
class SubdivisionCell:
    word: Tuple[int, ...]
    vertices: Tuple[PlanePoint, PlanePoint, PlanePoint]
    label: Triple

    def signed_area(self) -> Fraction:
        (x1, y1), (x2, y2), (x3, y3) = self.vertices
        return ((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)) / 2

    def area(self) -> Fraction:
        return abs(self.signed_area())

    @property
    def orientation(self) -> int:
        a = self.signed_area()
        return (a > 0) - (a < 0)

    def contains(self, p) -> bool:
        """Closed point-in-triangle test, exact."""
        (x1, y1), (x2, y2), (x3, y3) = self.vertices
        x, y = p

        def side(ax, ay, bx, by):
            return (bx - ax) * (y - ay) - (by - ay) * (x - ax)

        d = (side(x1, y1, x2, y2), side(x2, y2, x3, y3), side(x3, y3, x1, y1))
        return not (any(s < 0 for s in d) and any(s > 0 for s in d))

    def to_dict(self) -> dict:
        return {"word": "".join(map(str, self.word)),
                "vertices": [[_q(p.x), _q(p.y)] for p in self.vertices],
                "label": list(self.label),
                "area": _q(self.area())}


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cell(tmap: TripMap, word: Sequence[int]) -> SubdivisionCell:
    M = tmap.V
    for bit in word:
        M = mat_mul(M, tmap.F(bit))
    verts = tuple(project_pi(column(M, j)) for j in range(3))
    return SubdivisionCell(tuple(word), verts, Triple(*M[0]))


def subdivision(tmap: TripMap, depth: int, *, cap=None) -> List[SubdivisionCell]:
    """All 2^depth cells, in the order of their words read as binary numbers."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    check_depth(depth, SUBDIVISION_DEPTH_CAP, cap)
    return [cell(tmap, w) for w in product((0, 1), repeat=depth)]


def total_area(cells: Sequence[SubdivisionCell]) -> Fraction:
    return sum((c.area() for c in cells), Fraction(0))


def nesting_violations(tmap: TripMap, depth: int, *, cap=None) -> List[Tuple[int, ...]]:
    """Words of cells at depth 1..depth whose vertices leave the parent cell."""
    check_depth(depth, SUBDIVISION_DEPTH_CAP, cap)
    bad = []
    parents = {(): cell(tmap, ())}
    for _ in range(depth):
        children = {}
        for w, parent in parents.items():
            for bit in (0, 1):
                child = cell(tmap, w + (bit,))
                if not all(parent.contains(p) for p in child.vertices):
                    bad.append(child.word)
                children[child.word] = child
        parents = children
    return bad


def _svg_xy(p: PlanePoint) -> Tuple[str, str]:
    x = float(p.x) * VIEWPORT
    y = (1 - float(p.y)) * VIEWPORT
    return f"{x:.6f}".rstrip("0").rstrip("."), f"{y:.6f}".rstrip("0").rstrip(".")


def render_svg(cells: Sequence[SubdivisionCell], *, labels: bool = False,
               stroke: str = "black", stroke_width: float = 1.0,
               title: Optional[str] = None) -> str:
    """An SVG 1.1 document with one stroked polygon per cell.

    With ``labels``, each cell's three label entries are written next to
    its vertices.  Output depends only on the input and options.
    """
    pad = 20
    size = VIEWPORT + 2 * pad
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
           f'height="{size}" viewBox="{-pad} {-pad} {size} {size}">']
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append(f'<g fill="none" stroke="{stroke}" stroke-width="{stroke_width}">')
    for c in cells:
        pts = " ".join(",".join(_svg_xy(p)) for p in c.vertices)
        out.append(f'<polygon points="{pts}"/>')
    out.append("</g>")
    if labels:
        out.append('<g font-family="sans-serif" font-size="12" fill="black">')
        for c in cells:
            mx = sum(p.x for p in c.vertices) / 3
            my = sum(p.y for p in c.vertices) / 3
            for p, value in zip(c.vertices, c.label):
                # nudge each label a quarter of the way toward the centroid
                q = PlanePoint(p.x + (mx - p.x) / 4, p.y + (my - p.y) / 4)
                x, y = _svg_xy(q)
                out.append(f'<text x="{x}" y="{y}">{value}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def cells_json(cells: Sequence[SubdivisionCell]) -> List[dict]:
    return [c.to_dict() for c in cells]
