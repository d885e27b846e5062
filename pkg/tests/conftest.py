"""Shared helpers: seeded random graph generators and the pattern sweep
used by several suites.  The --run-full flag unlocks the exhaustive
7-vertex classification sweep."""

from __future__ import annotations

import random

import pytest

from decount.graphs import UndirectedGraph
from decount.patterns import Pattern
from decount.reducer import LayeredWeightedGraph


def pytest_addoption(parser):
    parser.addoption(
        "--run-full", action="store_true", default=False,
        help="run the exhaustive 7-vertex classification sweep")


@pytest.fixture
def run_full(request):
    return request.config.getoption("--run-full")


def er_graph(n: int, p: float, rng: random.Random) -> UndirectedGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return UndirectedGraph(n, edges)


def bounded_degeneracy_graph(n: int, d: int, rng: random.Random) -> UndirectedGraph:
    """Incremental construction: each new vertex attaches to at most d
    random earlier vertices, so the degeneracy is at most d."""
    edges = []
    for v in range(1, n):
        k = rng.randint(0, min(d, v))
        for u in rng.sample(range(v), k):
            edges.append((u, v))
    return UndirectedGraph(n, edges)


def random_connected_pattern(n: int, p: float, rng: random.Random) -> Pattern:
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < p]
        try:
            return Pattern(n, edges)
        except Exception:
            continue


def random_layered_graph(k: int, rng: random.Random, max_per_layer: int = 10,
                         density: float = 0.35, max_w: int = 10
                         ) -> LayeredWeightedGraph:
    lg = LayeredWeightedGraph(k)
    sizes = [rng.randint(1, max_per_layer) for _ in range(k)]
    for i in range(k):
        for u in range(sizes[i]):
            for v in range(sizes[(i + 1) % k]):
                if rng.random() < density:
                    lg.add_edge(i, ("v", i, u), ("v", (i + 1) % k, v),
                                rng.randint(1, max_w))
    return lg


_pattern_cache: dict[int, list[Pattern]] = {}


def connected_patterns(n: int) -> list[Pattern]:
    """All connected simple patterns on exactly n vertices, one per
    isomorphism class, generated by extending (n-1)-vertex patterns with a
    new vertex over every nonempty neighborhood."""
    if n in _pattern_cache:
        return _pattern_cache[n]
    if n == 1:
        out = [Pattern(1, [])]
    else:
        seen = {}
        for base in connected_patterns(n - 1):
            for mask in range(1, 1 << (n - 1)):
                edges = list(base.edges)
                for u in range(n - 1):
                    if mask >> u & 1:
                        edges.append((u, n - 1))
                q = Pattern(n, edges)
                key = q.canonical().key
                if key not in seen:
                    seen[key] = q
        out = sorted(seen.values(), key=lambda q: (q.m, q.canonical().encoding))
    _pattern_cache[n] = out
    return out
