"""Exact arithmetic for the 216 triangle partition (TRIP) maps and their
Stern-type sequences: levels, maxima and minima paths, level-sum
recurrences, forbidden triples, and subdivision pictures.
"""

from .algebra import A0, A1, IDENTITY, V, Perm3, Triple, make_triple, row_apply
from .family import (MONKEMEYER, TRIANGLE_MAP, TripMap, all_maps, e_maps, make_trip_map,
                     parse_map, trip_apply, trip_digits, trip_expansion)
from .geometry import project_pi, render_svg, subdivision
from .germs import enumerate_forbidden, germ_of, in_P, in_S, inverse_step, multiplicity_census
from .levels import (MinSide, PathPolicy, conjugate_map, level_sums, level_sums_table,
                     maxima_sequence, minima_sequence, verify_generalized_paths,
                     verify_max_path, verify_min_path)
from .recurrences import (Recurrence, classify_level_sums, classify_maxima, dominant_root,
                          fit_min_recurrence, oeis_crosscheck, verify_generalized_sums,
                          verify_recurrence)
from .stern import (Level, generating_function_coefficients, level, level_via_generating_function,
                    stern_diatomic, triangle_word, trip_stern_term)

__version__ = "0.1.0"

__all__ = [
    "A0", "A1", "IDENTITY", "V", "Perm3", "Triple", "make_triple", "row_apply",
    "MONKEMEYER", "TRIANGLE_MAP", "TripMap", "all_maps", "e_maps", "make_trip_map", "parse_map",
    "trip_apply", "trip_digits", "trip_expansion",
    "project_pi", "render_svg", "subdivision",
    "enumerate_forbidden", "germ_of", "in_P", "in_S", "inverse_step", "multiplicity_census",
    "MinSide", "PathPolicy", "conjugate_map", "level_sums", "level_sums_table",
    "maxima_sequence", "minima_sequence", "verify_generalized_paths", "verify_max_path",
    "verify_min_path",
    "Recurrence", "classify_level_sums", "classify_maxima", "dominant_root",
    "fit_min_recurrence", "oeis_crosscheck", "verify_generalized_sums", "verify_recurrence",
    "Level", "generating_function_coefficients", "level", "level_via_generating_function",
    "stern_diatomic", "triangle_word", "trip_stern_term",
]
