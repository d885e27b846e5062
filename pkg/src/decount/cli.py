"""Command-line frontend.

Subcommands: count, cycles, classify, reduce, expand, verify, bench.
Exit codes: 0 success, 2 input error, 3 cap exceeded, 4 verification
mismatch, 1 anything else.  Counts print in full decimal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import backend, catalog
from .dagtree import analyze
from .errors import (CapExceededError, DecountError, InputFormatError,
                     VerificationError)
from .expand import expand_even, expand_odd
from .graphs import UndirectedGraph, load_edge_list
from .oracle import hom_bruteforce, sub_bruteforce
from .patterns import Pattern, enumerate_acyclic_orientations
from .pipeline import classify_pattern, count_cycles, hom_count, sub_count
from .reducer import build_reduced_graph, find_cycle_reduction

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4


def _load_graph(path: str) -> UndirectedGraph:
    p = Path(path)
    if not p.exists():
        raise InputFormatError(f"graph file not found: {path}")
    with p.open() as fh:
        return load_edge_list(fh)


def _resolve_pattern(spec: str) -> Pattern:
    p = Path(spec)
    if p.exists():
        with p.open() as fh:
            g = load_edge_list(fh)
        return Pattern(g.n, g.edges, name=str(spec))
    return catalog.builtin_pattern(spec)


def _cmd_count(args) -> int:
    g = _load_graph(args.graph)
    h = _resolve_pattern(args.pattern)
    if args.mode == "hom":
        value = hom_count(g, h, allow_fallback=args.fallback)
    else:
        value = sub_count(g, h, allow_fallback=args.fallback)
    print(value)
    return EXIT_OK


def _cmd_cycles(args) -> int:
    g = _load_graph(args.graph)
    if not 3 <= args.k <= 10:
        raise InputFormatError("--k must be between 3 and 10")
    print(count_cycles(g, args.k))
    return EXIT_OK


def _cmd_classify(args) -> int:
    h = _resolve_pattern(args.pattern)
    report = classify_pattern(h, k_max=args.kmax)
    if args.json:
        payload = {
            "pattern": {"n": h.n, "edges": [list(e) for e in h.edges],
                        "name": h.name},
            "k_max": report.k_max,
            "overall": report.overall,
            "k": report.k,
            "orientations": [
                {
                    "arcs": [list(a) for a in v.arcs],
                    "multiplicity": v.multiplicity,
                    "verdict": v.kind,
                    "k": v.k,
                }
                for v in report.verdicts
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"pattern: {h.name or args.pattern}  (n={h.n}, m={h.m})")
        print(f"overall: {report.overall}")
        print(f"{'class':>5} {'mult':>5} {'verdict':>10} {'k':>3}")
        for i, v in enumerate(report.verdicts):
            print(f"{i:>5} {v.multiplicity:>5} {v.kind:>10} "
                  f"{v.k if v.k is not None else '-':>3}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    h = _resolve_pattern(args.pattern)
    orientations = enumerate_acyclic_orientations(h)
    if not 0 <= args.orientation < len(orientations):
        raise InputFormatError(
            f"orientation index out of range (0..{len(orientations) - 1})")
    arcs = orientations[args.orientation]
    op = analyze(h.n, arcs)
    cert = find_cycle_reduction(op, k_max=args.kmax)
    if cert is None:
        raise InputFormatError(
            f"orientation {args.orientation} of {args.pattern} is not "
            f"cycle-reducible for k <= {args.kmax}")
    from .graphs import orient_by_degeneracy

    lg = build_reduced_graph(cert, op, orient_by_degeneracy(g))
    lines = []
    for i in range(lg.k):
        v_layer = ((i + 1) % lg.k) + 1
        for (u, v), w in sorted(lg.edges[i].items()):
            ku = ",".join(str(g.labels[x]) for x in lg.layer_keys[i][u])
            kv = ",".join(str(g.labels[x])
                          for x in lg.layer_keys[(i + 1) % lg.k][v])
            lines.append(f"{i + 1} {ku or '-'} {v_layer} {kv or '-'} {w}")
    out = Path(args.out)
    out.write_text("\n".join(lines) + ("\n" if lines else ""))
    print(f"wrote {lg.num_edges} edges over {lg.num_vertices} vertices "
          f"in {lg.k} layers to {out}")
    return EXIT_OK


def _cmd_expand(args) -> int:
    g = _load_graph(args.graph)
    out_graph = expand_even(g) if args.mode == "even" else expand_odd(g)
    lines = [f"# vertex {i} = input label {lab}" for i, lab in enumerate(g.labels)]
    lines += [f"{u} {v}" for u, v in out_graph.edges]
    Path(args.out).write_text("\n".join(lines) + ("\n" if lines else ""))
    print(f"wrote {out_graph.m} edges on {out_graph.n} vertices to {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    h = _resolve_pattern(args.pattern)
    graphs = [("input", g)]
    if args.trials:
        import random

        rng = random.Random(args.seed)
        for t in range(args.trials):
            n = rng.randint(max(h.n, 4), 10)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.4]
            graphs.append((f"trial-{t}", UndirectedGraph(n, edges)))
    for name, graph in graphs:
        got_h = hom_count(graph, h, allow_fallback=True)
        want_h = hom_bruteforce(graph, h)
        got_s = sub_count(graph, h, allow_fallback=True)
        want_s = sub_bruteforce(graph, h)
        if got_h != want_h or got_s != want_s:
            raise VerificationError(
                f"{name}: pipeline (hom={got_h}, sub={got_s}) vs oracle "
                f"(hom={want_h}, sub={want_s})")
        print(f"{name}: hom={got_h} sub={got_s} (oracle agrees)")
    return EXIT_OK


def _cmd_bench(args) -> int:
    g = _load_graph(args.graph)
    ks = [int(x) for x in args.k.split(",")]
    print(f"backend: {backend.backend_name()}")
    print(f"{'k':>3} {'count':>20} {'seconds':>9}")
    for k in ks:
        t0 = time.perf_counter()
        value = count_cycles(g, k)
        dt = time.perf_counter() - t0
        print(f"{k:>3} {value:>20} {dt:>9.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="decount",
        description="Exact subgraph/homomorphism counting on sparse graphs "
                    "via weighted colorful cycle reduction")
    ap.add_argument("--threads", type=int, default=None,
                    help="advisory worker hint (mirrors DECOUNT_THREADS); "
                         "results are identical regardless")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count pattern occurrences")
    c.add_argument("--graph", required=True)
    c.add_argument("--pattern", required=True)
    c.add_argument("--mode", choices=["hom", "sub"], default="sub")
    c.add_argument("--fallback", action="store_true",
                   help="allow brute-force fallback for unclassifiable "
                        "orientations")
    c.set_defaults(func=_cmd_count)

    c = sub.add_parser("cycles", help="count k-cycles")
    c.add_argument("--graph", required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=_cmd_cycles)

    c = sub.add_parser("classify", help="per-orientation verdict table")
    c.add_argument("--pattern", required=True)
    c.add_argument("--kmax", type=int, default=5)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_classify)

    c = sub.add_parser("reduce", help="emit the reduced layered graph")
    c.add_argument("--graph", required=True)
    c.add_argument("--pattern", required=True)
    c.add_argument("--orientation", type=int, required=True)
    c.add_argument("--kmax", type=int, default=5)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_reduce)

    c = sub.add_parser("expand", help="emit an edge-subdivision expansion")
    c.add_argument("--graph", required=True)
    c.add_argument("--mode", choices=["even", "odd"], required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_expand)

    c = sub.add_parser("verify", help="pipeline vs brute-force oracle")
    c.add_argument("--graph", required=True)
    c.add_argument("--pattern", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=0)
    c.set_defaults(func=_cmd_verify)

    c = sub.add_parser("bench", help="wall-time table (informational)")
    c.add_argument("--graph", required=True)
    c.add_argument("--k", required=True, help="comma-separated cycle lengths")
    c.set_defaults(func=_cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads is not None:
        os.environ["DECOUNT_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except DecountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
