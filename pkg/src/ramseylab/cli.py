"""Command-line entry point: ``ramseylab <command> ...``.

Every command prints one JSON envelope on stdout.  Exit status is 0 when the
computation finished and its asserted properties held, 1 for a definitive
negative (invalid construction, unresolved search, lemma violation,
extraction failure, failed expectation) and 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from ._version import __version__
from .cache import ResultsCache
from .constructions import (
    GoodnessParams,
    book_cycle_lower_construction,
    goodness_lower_construction,
    verify_construction,
)
from .cycles import classify_pancyclicity, cycle_stats
from .extraction import ExtractionIncomplete, book_threshold, extract
from .extremal import EXTREMAL_CAP, c4_bound_holds, extremal_number
from .graph6 import Graph6Error, parse_edge_list, parse_graph6, write_graph6
from .graph_core import Graph, bipartition, connectivity, random_graph
from .lemmas import SUITES, brandt_smoke, max_degree_suite
from .predicates import TARGETS, RamseyParams, TwoColoring, evaluate_coloring, is_good_coloring
from .search import STRATEGIES, ramsey_number

__all__ = ["main", "build_parser", "envelope"]

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def envelope(command: str, params: dict, result: dict, seed: int | None, started: float) -> dict:
    return {
        "command": command,
        "toolkit_version": __version__,
        "params": params,
        "result": result,
        "seed": seed,
        "elapsed_ms": int(round((time.perf_counter() - started) * 1000)),
    }


def _add_graph_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--file", type=Path, help="file holding a graph6 line or an edge list")
    p.add_argument("--format", choices=("graph6", "edges"), default="graph6",
                   help="format of --file (default graph6)")


def _read_graph(args) -> Graph:
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    text = args.file.read_text()
    if args.format == "edges":
        return parse_edge_list(text)
    return parse_graph6(text.strip())


def _params(args) -> RamseyParams:
    return RamseyParams(args.n, args.m)


def _cache(args) -> ResultsCache | None:
    if getattr(args, "no_cache", False):
        return None
    return ResultsCache(args.cache)


def cmd_check(args):
    g = _read_graph(args)
    p = _params(args)
    w = evaluate_coloring(TwoColoring(g), p, args.target)
    kind = {"good_coloring": "good", "blue_cycle": "blue"}.get(w.tag, "red")
    result = {"order": g.order, "witness": w.to_dict(),
              "validated": w.validate(g, p.n, p.m, args.target), "outcome": kind}
    ok = result["validated"] and (args.expect is None or args.expect == kind)
    return {"n": p.n, "m": p.m, "target": args.target, "expect": args.expect}, result, None, ok


def cmd_spectrum(args):
    g = _read_graph(args)
    stats = cycle_stats(g, args.length_cap)
    bp = bipartition(g)
    ds = g.degree_stats()
    result = {
        "order": g.order,
        "edges": g.edge_count,
        "min_degree": ds.min_degree,
        "max_degree": ds.max_degree,
        "connectivity": connectivity(g),
        "bipartition": None if bp is None else bp.to_dict(),
        "cycle_stats": stats.to_dict(),
    }
    if args.length_cap is None:
        cls = classify_pancyclicity(g)
        result["pancyclicity"] = {"tag": cls.tag, "missing_lengths": sorted(cls.missing_lengths)}
    return {"length_cap": args.length_cap}, result, None, True


def cmd_construct(args):
    if args.goodness:
        if None in (args.order, args.chi, args.sigma):
            raise UsageError("--goodness needs --order, --chi and --sigma")
        gp = GoodnessParams(args.order, args.chi, args.sigma)
        c = goodness_lower_construction(gp)
        result = {"graph6": write_graph6(c.coloring.red), "order": c.coloring.order,
                  "bound": c.bound, "red_components": gp.chi - 1 + (gp.sigma > 1)}
        return {"order": gp.target_order, "chi": gp.chi, "sigma": gp.sigma}, result, None, True
    if args.n is None or args.m is None:
        raise UsageError("construct needs --n and --m (or --goodness)")
    p = _params(args)
    coloring = book_cycle_lower_construction(p)
    cert = verify_construction(coloring, p)
    result = {"graph6": write_graph6(coloring.red), "certificate": cert.to_dict()}
    return {"n": p.n, "m": p.m}, result, None, cert.passed


def cmd_verify_lemmas(args):
    names = args.suite or list(SUITES) + ["max_degree"]
    reports = []
    for name in names:
        if name == "max_degree":
            reports.append(max_degree_suite())
        elif name == "brandt_smoke":
            reports.append(brandt_smoke(instances=min(args.instances, 2000), seed=args.seed))
        else:
            reports.append(SUITES[name](instances=args.instances, seed=args.seed))
    result = {"suites": [r.to_dict() for r in reports],
              "passed": all(r.passed for r in reports)}
    return {"instances": args.instances, "suites": names}, result, args.seed, result["passed"]


def cmd_ramsey_search(args):
    p = _params(args)
    report = ramsey_number(args.target, p, args.cap, args.strategy, _cache(args))
    result = report.to_dict()
    cert_ok = (report.lower_certificate is not None
               and is_good_coloring(report.lower_certificate, p, args.target))
    result["lower_certificate_revalidated"] = cert_ok
    params = {"target": args.target, "n": p.n, "m": p.m, "cap": args.cap,
              "strategy": args.strategy}
    return params, result, None, report.resolved and cert_ok


def cmd_extremal(args):
    cache = _cache(args)
    key = {"command": "extremal", "forbidden": "C4", "order": args.order,
           "method": "enumeration+vertex-extension-v1"}
    hit = cache.get(key) if cache is not None else None
    if hit is None:
        rec = extremal_number(args.order, cap=args.cap)
        hit = rec.to_dict()
        if cache is not None:
            cache.put(key, hit)
    g = parse_graph6(hit["extremal_graph"])
    hit = dict(hit, bound_holds=c4_bound_holds(args.order, hit["ex_value"]),
               witness_edges=g.edge_count)
    return {"order": args.order, "forbidden": "C4"}, hit, None, hit["bound_holds"]


def cmd_extract(args):
    p = _params(args)
    if args.graph6 is not None or args.file is not None:
        g = _read_graph(args)
        seed = None
    else:
        if args.seed is None or args.density is None:
            raise UsageError("extract needs a graph (--graph6/--file) or both --seed and --density")
        if not 0 <= args.density <= 1:
            raise UsageError("--density must lie in [0, 1]")
        order = args.order
        if order is None:
            order = book_threshold(p.n) if args.target == "book" else 2 * p.n + 3
        g = random_graph(order, args.density, seed=args.seed)
        seed = args.seed
    params = {"n": p.n, "m": p.m, "target": args.target, "order": g.order,
              "density": args.density}
    try:
        res = extract(g, p, args.target, seed=seed)
    except ExtractionIncomplete as exc:
        return params, {"error": str(exc), "trace": exc.trace.to_dict()}, seed, False
    result = res.to_dict()
    result["validated"] = res.witness.validate(g, p.n, p.m)
    return params, result, seed, result["validated"] and res.exact


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramseylab",
                                     description="Book / K_2,n versus cycle Ramsey toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)
    # also accept --pretty after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indent the JSON output")

    def ramsey_args(p, required=True):
        p.add_argument("--n", type=int, required=required)
        p.add_argument("--m", type=int, required=required)

    p = sub.add_parser("check", parents=[common], help="evaluate a red graph as a colouring of K_N")
    _add_graph_input(p)
    ramsey_args(p)
    p.add_argument("--target", choices=TARGETS, default="book")
    p.add_argument("--expect", choices=("good", "red", "blue"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("spectrum", parents=[common], help="cycle structure of a graph")
    _add_graph_input(p)
    p.add_argument("--length-cap", type=int)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("construct", parents=[common], help="lower-bound colouring with its certificate")
    ramsey_args(p, required=False)
    p.add_argument("--goodness", action="store_true",
                   help="build the goodness colouring instead")
    p.add_argument("--order", type=int, help="order of the connected graph (goodness)")
    p.add_argument("--chi", type=int, help="chromatic number (goodness)")
    p.add_argument("--sigma", type=int, help="smallest colour class (goodness)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-lemmas", parents=[common], help="run the lemma property suites")
    p.add_argument("--instances", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", action="append",
                   choices=sorted(SUITES) + ["max_degree", "brandt_smoke"])
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("ramsey-search", parents=[common],
                       help="exact small Ramsey number by exhaustive search")
    p.add_argument("--target", choices=TARGETS, default="book")
    ramsey_args(p)
    p.add_argument("--cap", type=int, default=9)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="full")
    p.add_argument("--cache", type=Path, help="cache file (default: $RAMSEYLAB_CACHE or ~/.cache)")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_ramsey_search)

    p = sub.add_parser("extremal", parents=[common], help="ex(N, C_4) with a witness")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--cap", type=int, default=EXTREMAL_CAP)
    p.add_argument("--cache", type=Path)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("extract", parents=[common], help="extract a red target or blue C_m from a graph")
    ramsey_args(p)
    p.add_argument("--target", choices=TARGETS, default="book")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--graph6")
    src.add_argument("--file", type=Path)
    p.add_argument("--format", choices=("graph6", "edges"), default="graph6")
    p.add_argument("--seed", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--order", type=int, help="order of the random graph (default: threshold)")
    p.set_defaults(func=cmd_extract)
    return parser


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        params, result, seed, ok = args.func(args)
    except (UsageError, Graph6Error, ValueError, OSError) as exc:
        print(f"ramseylab {args.command}: {exc}", file=sys.stderr)
        return USAGE
    env = envelope(args.command, params, result, seed, started)
    print(json.dumps(env, default=_json_default, sort_keys=True,
                     indent=2 if args.pretty else None))
    return OK if ok else NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
