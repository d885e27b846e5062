import random

import pytest

from conftest import bounded_degeneracy_graph, connected_patterns, er_graph
from decount.backend import set_backend
from decount.catalog import (builtin_pattern, clique, cycle, path,
                             petersen_graph)
from decount.errors import UnclassifiablePatternError
from decount.graphs import UndirectedGraph
from decount.oracle import cycle_bruteforce, hom_bruteforce, sub_bruteforce
from decount.patterns import Pattern, licl
from decount.pipeline import (classify_pattern, count_cycles, hom_count,
                              orientation_classes, sub_count)


def test_classify_small_patterns_all_tau1():
    # patterns with at most 5 vertices never need the reduction
    for n in range(1, 6):
        for h in connected_patterns(n):
            rep = classify_pattern(h)
            assert rep.overall == "all-tau1", h.edges


def test_classify_c6():
    rep = classify_pattern(cycle(6))
    assert rep.overall == "C3-computable" and rep.k == 3
    kinds = {v.kind for v in rep.verdicts}
    assert kinds == {"tau1", "reducible"}
    assert sum(v.multiplicity for v in rep.verdicts) == 62


def test_classify_cycles_match_half_length():
    for length, k in ((6, 3), (7, 3), (8, 4), (9, 4), (10, 5)):
        rep = classify_pattern(cycle(length))
        assert rep.overall == f"C{k}-computable", (length, rep.overall)


def test_classify_low_licl_is_all_tau1():
    rng = random.Random(14)
    checked = 0
    while checked < 12:
        n = rng.randint(3, 7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        try:
            h = Pattern(n, edges)
        except Exception:
            continue
        if licl(h) >= 6:
            continue
        assert classify_pattern(h).overall == "all-tau1"
        checked += 1


def test_classify_fig6_not_computable():
    rep = classify_pattern(builtin_pattern("fig6-obstruction"), k_max=4)
    assert rep.overall == "not-computable"
    assert not rep.is_cycle_computable(4)


def test_hom_examples():
    k3 = UndirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert hom_count(k3, cycle(3)) == 6
    assert hom_count(k3, cycle(4)) == 18


def test_orientation_partition_sums_to_undirected_hom():
    rng = random.Random(41)
    for _ in range(10):
        g = er_graph(rng.randint(3, 8), 0.5, rng)
        for h in (cycle(3), path(4), cycle(5), clique(4)):
            assert hom_count(g, h) == hom_bruteforce(g, h)
            total_orients = sum(m for _, m in orientation_classes(h))
            assert total_orients >= 1


def test_sub_examples():
    k4 = clique(4)
    g_k4 = UndirectedGraph(4, k4.edges)
    assert sub_count(g_k4, cycle(3)) == 4
    pet = petersen_graph()
    assert sub_count(pet, cycle(5)) == 12
    assert sub_count(pet, cycle(6)) == 10


def test_hom_sub_vs_oracle_random():
    rng = random.Random(59)
    pats = [cycle(3), cycle(4), cycle(5), cycle(6), path(5), clique(4),
            Pattern(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])]
    for _ in range(8):
        g = er_graph(rng.randint(4, 9), rng.uniform(0.3, 0.6), rng)
        for h in pats:
            assert hom_count(g, h) == hom_bruteforce(g, h), (h.edges, g.edges)
            assert sub_count(g, h) == sub_bruteforce(g, h), (h.edges, g.edges)


def test_hom_on_bounded_degeneracy_graphs():
    rng = random.Random(61)
    for _ in range(6):
        g = bounded_degeneracy_graph(rng.randint(6, 12), 3, rng)
        for h in (cycle(6), cycle(7)):
            assert hom_count(g, h) == hom_bruteforce(g, h)


def test_count_cycles_examples():
    c10 = UndirectedGraph(10, cycle(10).edges)
    assert count_cycles(c10, 10) == 1
    assert count_cycles(c10, 3) == 0
    k4 = UndirectedGraph(4, clique(4).edges)
    assert count_cycles(k4, 3) == 4
    assert count_cycles(k4, 4) == 3


def test_count_cycles_vs_oracle():
    rng = random.Random(67)
    for _ in range(6):
        g = er_graph(rng.randint(5, 10), rng.uniform(0.3, 0.55), rng)
        for k in range(3, 11):
            assert count_cycles(g, k) == cycle_bruteforce(g, k), (k, g.edges)
    with pytest.raises(ValueError):
        count_cycles(er_graph(5, 0.4, rng), 11)


def test_dispatch_invariance_dual_classified():
    # a pattern orientation that is both width-1 and cycle-reducible must
    # count identically along both routes
    from decount.dagtree import analyze, find_tau1_decomposition, hom_count_tau1
    from decount.graphs import DirectedGraph
    from decount.reducer import find_cycle_reduction, hom_count_via_reduction
    from decount.wsub import wsub_bruteforce

    arcs = ((0, 3), (0, 4), (1, 3), (2, 4))  # star-ish: reaches {x},{y} split
    op = analyze(5, arcs)
    dec = find_tau1_decomposition(op)
    cert = find_cycle_reduction(op, 3)
    assert dec is not None and cert is not None
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(2, 9)
        g_arcs = {(i, j) for i in range(n) for j in range(n)
                  if i != j and rng.random() < 0.35}
        g = DirectedGraph(n, sorted(g_arcs))
        assert hom_count_tau1(op, g, dec) == \
            hom_count_via_reduction(cert, op, g, wsub_bruteforce)


def test_fallback_policy():
    fig6 = builtin_pattern("fig6-obstruction")
    rng = random.Random(9)
    g = er_graph(7, 0.5, rng)
    with pytest.raises(UnclassifiablePatternError):
        hom_count(g, fig6)
    assert hom_count(g, fig6, allow_fallback=True) == hom_bruteforce(g, fig6)


def test_pipeline_backends_agree():
    rng = random.Random(150)
    g = bounded_degeneracy_graph(60, 3, rng)
    results = {}
    for name in ("numba", "python"):
        set_backend(name)
        try:
            g2 = UndirectedGraph(g.n, g.edges)  # fresh caches
            results[name] = [count_cycles(g2, k) for k in (3, 4, 5, 6)]
        finally:
            set_backend("auto")
    assert results["numba"] == results["python"]
