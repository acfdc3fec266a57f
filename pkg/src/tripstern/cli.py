"""Command-line entry point: ``trip-stern <command> [options]``.

Exit codes: 0 success, 1 a check or invariant failed, 2 usage error.
Rationals are written as "p/q" strings in JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import tables
from ._config import DEPTH_CAP_ENV, DepthCapExceeded, check_depth
from .algebra import make_triple, row_apply, transpose
from .family import DEFAULT_K_CAP, all_maps, e_maps, parse_map, trip_expansion
from .geometry import cells_json, render_svg, subdivision
from .germs import enumerate_forbidden, germ_chain, germ_of, in_P, in_S
from .levels import (InvariantViolation, MinSide, PathPolicy, SeedConditionError,
                     claimed_max_policy, claimed_min_side,
                     level_sums_table, maxima_sequence, minima_sequence, path_maxima,
                     verify_generalized_paths, verify_max_path, verify_min_path)
from .recurrences import (InsufficientTerms, Recurrence, classify_level_sums, classify_maxima,
                          compare_sum_grouping, fit_min_recurrence, lookup_oeis,
                          max_order_for, verify_generalized_sums)
from .stern import levels, stern_brocot_pairs, stern_diatomic

COMMANDS = ("tree", "maxima", "minima", "sums", "verify-paths", "fit", "classify", "germ",
            "forbidden", "trip-seq", "stern", "render", "reproduce-tables")
FORMATS = ("json", "csv", "svg")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    map: Optional[str] = None
    seed: tuple = (1, 1, 1)
    depth: Optional[int] = None
    format: str = "json"
    out: Optional[str] = None
    depth_cap: Optional[int] = None
    k_cap: int = DEFAULT_K_CAP
    jobs: int = 1
    options: Dict[str, Any] = field(default_factory=dict)


def q(x) -> Any:
    """JSON form of an exact number: ints stay ints, fractions become "p/q"."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def _map_arg(text: str) -> str:
    try:
        return parse_map(text).name
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _triple_arg(text: str) -> tuple:
    try:
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError
        return tuple(make_triple(parts))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected three rationals 'a,b,c', got {text!r}") from None


def _int_triple_arg(text: str) -> tuple:
    t = _triple_arg(text)
    if not all(isinstance(x, int) for x in t):
        raise argparse.ArgumentTypeError(f"expected three integers, got {text!r}")
    return t


def _point_arg(text: str) -> tuple:
    try:
        x, y = (Fraction(p.strip()) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a point 'x,y', got {text!r}") from None
    return x, y


def _values_arg(text: str) -> List[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--depth-cap", type=int, help=f"override the depth cap (also {DEPTH_CAP_ENV})")
    common.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP,
                        help="largest subtriangle index searched per TRIP digit")

    def mapped(p, depth=None):
        p.add_argument("--map", type=_map_arg, default="e,e,e", help="sigma,tau0,tau1")
        p.add_argument("--seed", type=_triple_arg, default=(1, 1, 1))
        p.add_argument("--depth", type=_positive, default=depth)

    parser = argparse.ArgumentParser(prog="trip-stern", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    mapped(sub.add_parser("tree", parents=[common], help="levels of a TRIP-Stern tree"), 4)
    p = sub.add_parser("maxima", parents=[common], help="level maxima")
    mapped(p, 12)
    p.add_argument("--path", choices=[x.value for x in PathPolicy],
                   help="walk this path instead of scanning whole levels")
    mapped(sub.add_parser("minima", parents=[common], help="level minima"), 12)
    mapped(sub.add_parser("sums", parents=[common], help="level sums, computed two ways"), 12)

    p = sub.add_parser("verify-paths", parents=[common], help="check the path theorems for a map")
    mapped(p, 15)
    p.add_argument("--kind", choices=("max", "min", "generalized"), default="max")
    p.add_argument("--policy", choices=[x.value for x in PathPolicy],
                   help="maxima path to test (default: the one claimed for the map)")
    p.add_argument("--side", choices=[x.value for x in MinSide],
                   help="minima side to test (default: the one claimed for the map)")

    p = sub.add_parser("fit", parents=[common], help="minimal exact recurrence of a sequence")
    p.add_argument("--values", type=_values_arg, required=True)
    p.add_argument("--max-order", type=_positive, default=None)

    p = sub.add_parser("classify", parents=[common], help="group maps by sums or maxima")
    p.add_argument("--what", choices=("sums", "maxima"), default="sums")
    p.add_argument("--depth", type=_positive, default=12)
    p.add_argument("--all-maps", action="store_true", help="all 216 maps (sums default to 36)")

    p = sub.add_parser("germ", parents=[common], help="germ of a triple of the (e,e,e) tree")
    p.add_argument("--triple", type=_int_triple_arg, required=True)

    p = sub.add_parser("forbidden", parents=[common], help="triples missing from the (e,e,e) tree")
    p.add_argument("--sum-bound", type=_positive, default=30)

    p = sub.add_parser("trip-seq", parents=[common], help="TRIP digits of a rational point")
    p.add_argument("--map", type=_map_arg, default="e,e,e")
    p.add_argument("--point", type=_point_arg, required=True)
    p.add_argument("--digits", type=_positive, default=20)
    p.add_argument("--boundary", choices=("upper", "lower", "raise"), default="upper")

    p = sub.add_parser("stern", parents=[common], help="Stern diatomic sequence baseline")
    p.add_argument("--n", type=_positive, default=16, help="number of terms")
    p.add_argument("--level", type=_positive, help="print this Stern-Brocot level instead")

    p = sub.add_parser("render", parents=[common], help="subdivision picture")
    p.add_argument("--map", type=_map_arg, default="e,e,e")
    p.add_argument("--depth", type=_positive, default=6)
    p.add_argument("--labels", action="store_true")

    sub.add_parser("reproduce-tables", parents=[common], help="pass/fail matrix for the tables")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Validated configuration; usage errors exit with status 2."""
    ns = vars(build_parser().parse_args(argv))
    cfg = RunConfig(command=ns.pop("command"))
    for name in ("map", "seed", "depth", "format", "out", "depth_cap", "k_cap", "jobs"):
        if name in ns:
            value = ns.pop(name)
            if value is not None:
                setattr(cfg, name, value)
    cfg.options = ns
    if cfg.format == "svg" and cfg.command != "render":
        raise SystemExit(_usage("--format svg is only for render"))
    return cfg


def _usage(msg: str) -> int:
    print(f"trip-stern: error: {msg}", file=sys.stderr)
    return 2


# -- command bodies: each returns (payload, csv rows, ok) -----------------------------

def _rows_csv(header: Sequence[str], rows: List[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([q(x) if isinstance(x, (Fraction, int)) and not isinstance(x, bool) else x
                    for x in r])
    return buf.getvalue()


class Output:
    def __init__(self, payload, header=(), rows=(), ok=True, text=None):
        self.payload, self.header, self.rows, self.ok, self.text = payload, header, list(rows), ok, text


# every row of the tree is serialized, so printing stops well before the level cap
TREE_OUTPUT_DEPTH_CAP = 20


def cmd_tree(cfg: RunConfig) -> Output:
    check_depth(cfg.depth, TREE_OUTPUT_DEPTH_CAP, cfg.depth_cap)
    tmap = parse_map(cfg.map)
    lv = levels(tmap, cfg.depth, cfg.seed, cap=cfg.depth_cap)
    rows = [(L.depth, L.index(j), "".join(map(str, L.word(j))), *L[j])
            for L in lv for j in range(len(L))]
    payload = {"map": cfg.map, "seed": [q(x) for x in cfg.seed], "depth": cfg.depth,
               "levels": [[[q(x) for x in t] for t in L] for L in lv]}
    return Output(payload, ("level", "index", "word", "a", "b", "c"), rows)


def cmd_maxima(cfg: RunConfig) -> Output:
    tmap = parse_map(cfg.map)
    path = cfg.options.get("path")
    if path:
        values = path_maxima(tmap, PathPolicy(path), cfg.depth, cfg.seed, cap=cfg.depth_cap)
    else:
        values = maxima_sequence(tmap, cfg.depth, cfg.seed, cap=cfg.depth_cap)
    payload = {"map": cfg.map, "seed": [q(x) for x in cfg.seed],
               "method": f"path/{path}" if path else "exhaustive",
               "maxima": [q(v) for v in values]}
    return Output(payload, ("level", "max"), enumerate(values, start=1))


def cmd_minima(cfg: RunConfig) -> Output:
    tmap = parse_map(cfg.map)
    values = minima_sequence(tmap, cfg.depth, cfg.seed, cap=cfg.depth_cap)
    payload = {"map": cfg.map, "seed": [q(x) for x in cfg.seed], "minima": [q(v) for v in values]}
    return Output(payload, ("level", "min"), enumerate(values, start=1))


def cmd_sums(cfg: RunConfig) -> Output:
    tmap = parse_map(cfg.map)
    table = level_sums_table(tmap, cfg.depth, cfg.seed, cap=cfg.depth_cap)
    rows = [(n, s.S1, s.S2, s.S3, s.S) for n, s in enumerate(table, start=1)]
    payload = {"map": cfg.map, "seed": [q(x) for x in cfg.seed], "dual_check": "agree",
               "sums": [{"level": n, "S1": q(a), "S2": q(b), "S3": q(c), "S": q(s)}
                        for n, a, b, c, s in rows]}
    return Output(payload, ("level", "S1", "S2", "S3", "S"), rows)


def cmd_verify_paths(cfg: RunConfig) -> Output:
    tmap = parse_map(cfg.map)
    kind = cfg.options["kind"]
    if kind == "generalized":
        report = verify_generalized_paths(tmap, cfg.seed, cfg.depth, cap=cfg.depth_cap)
        checks = [r for _, r in report.checks]
        payload = report.to_dict()
    else:
        if kind == "max":
            policy = cfg.options["policy"] or claimed_max_policy(tmap)
            checks = [verify_max_path(tmap, policy, cfg.depth, cfg.seed, cap=cfg.depth_cap)] \
                if policy else []
        else:
            side = cfg.options["side"] or claimed_min_side(tmap)
            checks = [verify_min_path(tmap, side, cfg.depth, cfg.seed, cap=cfg.depth_cap)] \
                if side else []
        payload = {"map": cfg.map, "kind": kind, "claimed": bool(checks),
                   "ok": all(r.ok for r in checks), "checks": [r.to_dict() for r in checks]}
    rows = [(r.path, n, q(v), hit) for r in checks
            for n, (hit, v) in enumerate(zip(r.levels, r.values), start=1)]
    ok = all(r.ok for r in checks)
    return Output(payload, ("path", "level", "value", "on_path"), rows, ok)


def cmd_fit(cfg: RunConfig) -> Output:
    values = cfg.options["values"]
    max_order = cfg.options["max_order"]
    if max_order is None:
        max_order = max_order_for(len(values))
        if max_order < 1:
            raise UsageError("need at least 4 values")
    rec = fit_min_recurrence(values, max_order)
    payload = {"values": [q(v) for v in values], "max_order": max_order,
               "order": rec.order if rec else None,
               "coefficients": [q(c) for c in rec.coefficients] if rec else None,
               "relation": str(rec) if rec else None}
    if rec is not None:
        entry = lookup_oeis(rec)
        payload["oeis"] = entry["a_numbers"] if entry else []
    rows = [(i, q(c)) for i, c in enumerate(rec.coefficients, start=1)] if rec else []
    return Output(payload, ("lag", "coefficient"), rows)


def cmd_classify(cfg: RunConfig) -> Output:
    what = cfg.options["what"]
    maps = all_maps() if cfg.options["all_maps"] or what == "maxima" else e_maps()
    if what == "sums":
        report = classify_level_sums(cfg.depth, maps, jobs=cfg.jobs)
    else:
        report = classify_maxima(cfg.depth, maps, jobs=cfg.jobs)
    payload = report.to_dict()
    rows = [(m, i, json.dumps(report.groups[i].get("recurrence")))
            for m, i in sorted(report.by_map().items())]
    return Output(payload, ("map", "group", "recurrence"), rows)


def cmd_germ(cfg: RunConfig) -> Output:
    t = cfg.options["triple"]
    if not in_P(t):
        payload = {"triple": list(t), "in_P": False, "germ": None, "in_S": False}
        return Output(payload, ("triple", "in_P", "germ", "in_S"),
                      [(" ".join(map(str, t)), False, "", False)])
    g = germ_of(t)
    payload = {"triple": list(t), "in_P": True, "germ": list(g.triple), "in_S": in_S(t),
               "chain": [list(x) for x in germ_chain(t)]}
    return Output(payload, ("triple", "in_P", "germ", "in_S"),
                  [(" ".join(map(str, t)), True, " ".join(map(str, g.triple)), payload["in_S"])])


def cmd_forbidden(cfg: RunConfig) -> Output:
    bound = cfg.options["sum_bound"]
    if bound < 3:
        raise UsageError("--sum-bound must be at least 3")
    found = enumerate_forbidden(bound)
    payload = {"sum_bound": bound, "count": len(found),
               "forbidden": [{"triple": list(t), "germ": list(germ_of(t).triple)} for t in found]}
    return Output(payload, ("a", "b", "c", "germ"),
                  [(*t, " ".join(map(str, germ_of(t).triple))) for t in found])


def cmd_trip_seq(cfg: RunConfig) -> Output:
    tmap = parse_map(cfg.map)
    exp = trip_expansion(tmap, cfg.options["point"], cfg.options["digits"],
                         k_cap=cfg.k_cap, boundary=cfg.options["boundary"])
    x, y = cfg.options["point"]
    payload = {"map": cfg.map, "point": [q(x), q(y)], "digits": exp.digits, "stop": exp.stop}
    return Output(payload, ("position", "digit"), enumerate(exp.digits, start=1))


def cmd_stern(cfg: RunConfig) -> Output:
    lvl = cfg.options["level"]
    if lvl is not None:
        pairs = stern_brocot_pairs(lvl)
        payload = {"level": lvl, "fractions": [f"{p}/{r}" for p, r in pairs],
                   "denominators": [r for _, r in pairs]}
        return Output(payload, ("numerator", "denominator"), pairs)
    n = cfg.options["n"]
    values = [stern_diatomic(i) for i in range(1, n + 1)]
    return Output({"n": n, "stern": values}, ("n", "a_n"), enumerate(values, start=1))


def cmd_render(cfg: RunConfig) -> Output:
    tmap = parse_map(cfg.map)
    cells = subdivision(tmap, cfg.depth, cap=cfg.depth_cap)
    payload = {"map": cfg.map, "depth": cfg.depth, "cells": cells_json(cells)}
    rows = [(c["word"], *(v for p in c["vertices"] for v in p), *c["label"]) for c in payload["cells"]]
    svg = render_svg(cells, labels=cfg.options["labels"], title=f"TRIP map ({cfg.map}), depth {cfg.depth}")
    return Output(payload, ("word", "x1", "y1", "x2", "y2", "x3", "y3", "l1", "l2", "l3"), rows, text=svg)


# -- table reproduction -------------------------------------------------------------------

def reproduce_tables(jobs: int = 1) -> List[dict]:
    """Recompute every published table; one row per item with pass/fail and a diff."""
    out: List[dict] = []

    def add(table, item, ok, detail=""):
        out.append({"table": table, "item": item, "ok": bool(ok), "detail": detail})

    seeds = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for tmap in e_maps():
        for bit, exprs in ((0, tables.TABLE1_F0), (1, tables.TABLE1_F1)):
            key = (tmap.tau0 if bit == 0 else tmap.tau1).value
            expected = tables.linear_form(exprs[key])
            got = tuple(tuple(row_apply(s, tmap.F(bit))[j] for s in seeds) for j in range(3))
            add("1", f"{tmap.name} F{bit}", got == expected and got == transpose(tmap.F(bit)),
                "" if got == expected else f"expected {expected}, got {got}")

    for prefix, rec, names, anum in tables.TABLE2:
        for name in names:
            got = maxima_sequence(parse_map(name), len(prefix))
            add("2", f"{name} {anum}", tuple(got) == prefix,
                "" if tuple(got) == prefix else f"printed {list(prefix)}, computed {got}")
    maxima = classify_maxima(12, jobs=jobs)
    add("2", "distinct maxima sequences (216 maps, depth 12, empirical)", maxima.count == 8,
        f"{maxima.count} groups")

    sums = classify_level_sums(12, jobs=jobs)
    diffs = compare_sum_grouping(sums)
    add("3", "sum classes", sums.count == 11, f"{sums.count} groups")
    add("3", "grouping", not diffs, "; ".join(diffs))

    for tmap in e_maps():
        r = verify_generalized_sums(tmap, 12)
        add("5", tmap.name, r.ok, "" if r.ok else f"expected {r.expected}, per seed {r.per_seed}")

    catalog_numbers = set()
    for g in sums.groups:
        entry = lookup_oeis(Recurrence(tuple(Fraction(c) for c in g["recurrence"])))
        add("oeis", g["relation"], entry is not None, "" if entry else "no catalog entry")
        if entry:
            catalog_numbers.update(entry["a_numbers"])
    listed = {"A080040", "A200752", "A061646", "A007689", "A215404", "A006131",
              "A278612", "A278613", "A278614", "A278615", "A278616"}
    add("oeis", "A-numbers", listed <= catalog_numbers,
        ", ".join(sorted(listed - catalog_numbers)))
    return out


def cmd_reproduce_tables(cfg: RunConfig) -> Output:
    rows = reproduce_tables(cfg.jobs)
    ok = all(r["ok"] for r in rows)
    payload = {"ok": ok, "passed": sum(r["ok"] for r in rows), "failed": sum(not r["ok"] for r in rows),
               "rows": rows}
    return Output(payload, ("table", "item", "status", "detail"),
                  [(r["table"], r["item"], "pass" if r["ok"] else "FAIL", r["detail"]) for r in rows], ok)


HANDLERS = {
    "tree": cmd_tree, "maxima": cmd_maxima, "minima": cmd_minima, "sums": cmd_sums,
    "verify-paths": cmd_verify_paths, "fit": cmd_fit, "classify": cmd_classify, "germ": cmd_germ,
    "forbidden": cmd_forbidden, "trip-seq": cmd_trip_seq, "stern": cmd_stern, "render": cmd_render,
    "reproduce-tables": cmd_reproduce_tables,
}


def _emit(cfg: RunConfig, result: Output) -> None:
    if cfg.format == "svg":
        text = result.text
    elif cfg.format == "csv":
        text = _rows_csv(result.header, result.rows)
    else:
        text = json.dumps(result.payload, indent=2, ensure_ascii=False) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


@contextmanager
def _depth_cap(value: Optional[int]):
    """Apply ``--depth-cap`` for the duration of one command."""
    if value is None:
        yield
        return
    saved = os.environ.get(DEPTH_CAP_ENV)
    os.environ[DEPTH_CAP_ENV] = str(value)
    try:
        yield
    finally:
        if saved is None:
            del os.environ[DEPTH_CAP_ENV]
        else:
            os.environ[DEPTH_CAP_ENV] = saved


def run(cfg: RunConfig) -> int:
    try:
        with _depth_cap(cfg.depth_cap):
            result = HANDLERS[cfg.command](cfg)
    except (UsageError, DepthCapExceeded, SeedConditionError, InsufficientTerms) as exc:
        return _usage(str(exc))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        return _usage(str(exc))
    except InvariantViolation as exc:
        print(f"trip-stern: invariant violated: {exc}", file=sys.stderr)
        return 1
    _emit(cfg, result)
    return 0 if result.ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
