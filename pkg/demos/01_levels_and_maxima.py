"""
Levels, maxima and minima of a trip-Stern sequence
==================================================

Walks the (e,e,e) tree a few levels deep, then compares the largest
entry on each level with the path walk that predicts it.
"""

from tripstern import TRIANGLE_MAP, level, maxima_sequence, minima_sequence, parse_map
from tripstern.levels import PathPolicy, path_maxima

# the first few levels of the tree, seed (1,1,1)
for n in range(1, 5):
    print(n, [tuple(t) for t in level(TRIANGLE_MAP, n)])

# maxima grow like m(n) = m(n-1) + m(n-3); the leftmost path realises them
exhaustive = maxima_sequence(TRIANGLE_MAP, 15)
walk = path_maxima(TRIANGLE_MAP, PathPolicy.LEFT, 15)
print("maxima   ", exhaustive)
print("path walk", walk)
assert exhaustive == walk

# a Fibonacci-type map for contrast
fib = parse_map("e,123,e")
print("e,123,e  ", maxima_sequence(fib, 12))

# minima stay at 1 for most maps
print("minima   ", minima_sequence(parse_map("e,12,12"), 12))
