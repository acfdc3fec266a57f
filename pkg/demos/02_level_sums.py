"""
Level sums and their recurrences
================================

Sums of all entries on a level satisfy a short linear recurrence.
We fit one exactly, group the 36 base maps by it, and compare the
growth ratio with the dominant eigenvalue of F0 + F1.
"""

from tripstern import TRIANGLE_MAP, Recurrence, classify_level_sums, fit_min_recurrence
from tripstern.levels import sum_ratio_estimate, sum_sequence
from tripstern.recurrences import lookup_oeis, map_dominant_root

S = sum_sequence(TRIANGLE_MAP, 16)
print(S)
rec = fit_min_recurrence(S)
print(rec)

r = sum_ratio_estimate(TRIANGLE_MAP, 30)
print("S(30)/S(29) =", float(r.ratio), " eigenvalue =", map_dominant_root(TRIANGLE_MAP))

report = classify_level_sums(12)
print(report.count, "classes")
for g in report.groups:
    entry = lookup_oeis(Recurrence(tuple(g["recurrence"])))
    anum = entry["a_numbers"][0] if entry else "-"
    print(f"{g['relation']:<45} {anum}  {len(g['maps'])} maps")
