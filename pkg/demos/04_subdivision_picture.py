"""
Subdivision of the triangle
===========================

Cylinder cells of depth n tile the triangle; each is labelled by the
trip-Stern triple of its word. Writes an SVG next to this script.
"""

from pathlib import Path

from tripstern import TRIANGLE_MAP, render_svg, subdivision
from tripstern.geometry import total_area

cells = subdivision(TRIANGLE_MAP, 5)
print(len(cells), "cells, total area", total_area(cells))
for c in cells[:4]:
    print(c.word, tuple(c.label), c.area())

out = Path(__file__).with_name("eee_depth5.svg")
out.write_text(render_svg(cells, labels=True))
print("wrote", out)
