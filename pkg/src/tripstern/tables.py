"""Published reference data: map lists, sequence prefixes and recurrences.

Everything here is transcribed data, kept apart from the code that
recomputes it so the two can be compared.  Maps are ``"sigma,tau0,tau1"``
strings; recurrences are coefficient tuples ``(c1, ..., cr)`` meaning
``s(n) = c1 s(n-1) + ... + cr s(n-r)``.
"""

import json
from importlib import resources


def _names(*items):
    return tuple(",".join(("e",) + tuple(t.split())) for t in items)


# (a,b,c) F0 and (a,b,c) F1 for the 36 maps (e, tau0, tau1).
TABLE1_F0 = {
    "e": "b, c, a+c",
    "12": "c, b, a+c",
    "13": "a+c, c, b",
    "23": "b, a+c, c",
    "123": "a+c, b, c",
    "132": "c, a+c, b",
}
TABLE1_F1 = {
    "e": "a, b, a+c",
    "12": "b, a, a+c",
    "13": "a+c, b, a",
    "23": "a, a+c, b",
    "123": "a+c, a, b",
    "132": "b, a+c, a",
}


def table1_row(tau0: str, tau1: str):
    return TABLE1_F0[tau0], TABLE1_F1[tau1]


def linear_form(expr: str):
    """Parse ``"b, a+c, c"`` into coefficient rows over (a, b, c)."""
    rows = []
    for part in expr.split(","):
        coeffs = [0, 0, 0]
        for term in part.split("+"):
            term = term.strip()
            k = 1
            if term[:-1].isdigit():
                k, term = int(term[:-1]), term[-1]
            coeffs["abc".index(term)] += k
        rows.append(tuple(coeffs))
    return tuple(rows)


# First terms of the TRIP-Stern sequences.
FIRST_TERMS = {
    "e,e,e": [(1, 1, 1), (1, 1, 2), (1, 1, 2), (1, 2, 3), (1, 1, 3), (1, 2, 3), (1, 1, 3)],
    "13,132,132": [(1, 1, 1), (1, 2, 1), (1, 2, 1), (1, 2, 2), (2, 2, 1), (1, 2, 2), (2, 2, 1)],
}

EEE_MAXIMA = (1, 2, 3, 4, 6, 9, 13, 19, 28)

# Rows of the conjectured-maxima table as printed: prefix, recurrence or
# None for "unknown", representative maps, A-number.
TABLE2 = (
    ((1, 2, 3, 5, 7, 11, 16, 25, 36, 56, 81), None, _names("13 e", "123 12"), "A271485"),
    ((1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60), (1, 0, 1), _names("13 12"), "A000930"),
    ((1, 2, 3, 4, 6, 8, 11, 16, 22, 30, 43), None, _names("13 23", "23 12"), "A271486"),
    ((1, 2, 3, 4, 6, 8, 11, 17, 23, 32, 48), None, _names("13 132", "132 12"), "A271487"),
    ((1, 2, 3, 4, 6, 8, 11, 15, 21, 30, 41), None, _names("23 e", "123 23"), "A271488"),
    ((1, 2, 3, 4, 5, 7, 9, 12, 16, 21), (0, 1, 1),
     _names("23 23", "23 132", "132 23", "132 132"), "A000931"),
    ((1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144), (1, 1), _names("123 e"), "A000045"),
    ((1, 2, 3, 4, 5, 7, 10, 13, 18, 25, 34), None, _names("123 132", "132 e"), "A271489"),
)

# Maps whose maxima follow the Fibonacci recurrence, resp. m_n = m_{n-1} + m_{n-3}.
FIBONACCI_MAXIMA = _names("e 13", "12 e", "12 12", "12 13", "12 23", "12 123", "12 132",
                          "13 13", "23 13", "123 13", "132 13")
NARAYANA_MAXIMA = _names("e e", "e 12", "e 23", "e 123", "e 132", "13 123", "23 123",
                         "123 123", "132 123")

# Paths through the tree containing the level maxima for seed (1,1,1).
MAX_PATH_RIGHT = _names("e 13", "13 13", "13 123", "23 13", "23 123", "23 132", "123 13",
                        "123 123", "132 13", "132 123", "132 132")
MAX_PATH_LEFT = _names("e e", "e 12", "e 23", "e 123", "e 132", "12 e", "12 12", "12 13",
                       "12 23", "12 123", "12 132", "132 23")
MAX_PATH_ALTERNATE = _names("13 12", "23 23", "123 e")

# Paths containing the level minima for seed (1,1,1).
MIN_PATH_LEFT = _names("12 12", "12 123", "12 132", "13 123", "13 132", "23 12", "23 123",
                       "23 132", "123 12", "123 123", "123 132")
MIN_PATH_RIGHT = _names("e e", "e 12", "e 13", "e 23", "13 e", "13 13", "13 23", "132 e",
                        "132 12", "132 13", "132 23")
MIN_PATH_BOTH = _names("12 e", "12 13", "12 23", "13 12", "23 e", "23 13", "23 23",
                       "123 e", "123 13", "123 23")

# Generalized seeds: maxima paths under seed-order conditions.
GEN_MAX_RIGHT = _names("13 123", "e 13", "13 13", "23 13", "23 123", "123 13", "123 123",
                       "132 13", "132 123")
GEN_MAX_LEFT = _names("e e", "e 12", "e 23", "e 123", "e 132", "12 e", "12 12", "12 13",
                      "12 23", "12 123", "12 132")

# Seed-order conditions for the conjugated maps (kappa sigma, tau0 kappa^-1,
# tau1 kappa^-1), written as the chain of seed components from largest to
# smallest; all components positive.
KAPPA_RIGHT_ORDER = {"e": "abc", "12": "bac", "13": "cba", "23": "acb", "123": "cab",
                     "132": "bca"}
KAPPA_LEFT_ORDER = {"e": "abc", "12": "bac", "13": "cba", "23": "acb", "123": "cab",
                    "132": "bca"}  # read smallest to largest

# Level sums: the eleven recurrences and the maps (e, tau0, tau1) in each.
TABLE3 = (
    ((4, -5, 4), _names("e e", "123 123")),
    ((2, 2), _names("e 12", "e 123", "13 12", "13 123")),
    ((3, -1, 1), _names("e 13", "12 123")),
    ((2, 2, -1), _names("e 23", "12 23", "12 132", "23 e", "23 13", "23 123", "123 23",
                        "123 132", "132 e", "132 13")),
    ((1, 2, 6), _names("e 132", "132 123")),
    ((5, -6), _names("12 e", "12 13", "123 e", "123 13")),
    ((3, 1, -4), _names("12 12", "13 13")),
    ((4, -3, -1), _names("13 e", "123 12")),
    ((2, 4, -6), _names("13 23", "23 12")),
    ((1, 4, 1), _names("13 132", "132 12")),
    ((1, 4), _names("23 23", "23 132", "132 23", "132 132")),
)

# The generalized-seed table repeats the same recurrences and groups.
TABLE5 = TABLE3

# Dominant roots quoted in the text.
ALPHA_EEE = 2.69562
NARAYANA_ROOT = 1.46557


def oeis_catalog():
    """The bundled catalog of recurrences with their A-numbers."""
    text = resources.files(__package__).joinpath("data/oeis_catalog.json").read_text("utf-8")
    return json.loads(text)
