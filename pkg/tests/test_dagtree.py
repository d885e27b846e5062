import random

import pytest

from conftest import random_connected_pattern
from decount.backend import set_backend
from decount.catalog import fig3_graph, fig3_pattern_arcs
from decount.dagtree import (analyze, decomposition_is_valid,
                             extension_counts, find_tau1_decomposition,
                             hom_count_tau1)
from decount.errors import CapExceededError
from decount.graphs import DirectedGraph
from decount.oracle import hom_bruteforce_directed
from decount.patterns import enumerate_acyclic_orientations


def random_digraph(n, p, rng):
    arcs = {(i, j) for i in range(n) for j in range(n)
            if i != j and rng.random() < p}
    return DirectedGraph(n, sorted(arcs))


def test_analyze_edge():
    p = analyze(2, [(0, 1)])
    assert p.sources == (0,)
    assert p.intersections == ()


def test_analyze_alternating_c6():
    n, arcs = fig3_pattern_arcs()
    p = analyze(n, arcs)
    assert p.sources == (0, 1, 2)
    assert p.intersections == (3, 4, 5)


def test_analyze_out_star():
    p = analyze(4, [(0, 1), (0, 2), (0, 3)])
    assert p.sources == (0,)
    assert p.intersections == ()


def test_analyze_rejects_cycles():
    with pytest.raises(ValueError, match="acyclic"):
        analyze(3, [(0, 1), (1, 2), (2, 0)])


def test_tau1_single_source_trivial():
    p = analyze(4, [(0, 1), (1, 2), (1, 3)])
    dec = find_tau1_decomposition(p)
    assert dec is not None and dec.parent == {0: None}


def test_tau1_two_sources_always():
    p = analyze(3, [(0, 2), (1, 2)])
    dec = find_tau1_decomposition(p)
    assert dec is not None and decomposition_is_valid(p, dec)


def test_tau1_alternating_c6_none():
    n, arcs = fig3_pattern_arcs()
    assert find_tau1_decomposition(analyze(n, arcs)) is None


def test_tau1_found_trees_valid():
    rng = random.Random(8)
    found = 0
    for _ in range(120):
        pat = random_connected_pattern(rng.randint(3, 7), 0.45, rng)
        arcs = rng.choice(enumerate_acyclic_orientations(pat))
        op = analyze(pat.n, arcs)
        dec = find_tau1_decomposition(op)
        if dec is not None:
            found += 1
            assert decomposition_is_valid(op, dec)
    assert found > 40


def test_tau1_source_cap():
    # star with 9 leaves pointing in: 9 sources
    p = analyze(10, [(i, 9) for i in range(9)])
    with pytest.raises(CapExceededError):
        find_tau1_decomposition(p)


def test_extension_counts_edge_pattern():
    p = analyze(2, [(0, 1)])
    dec = find_tau1_decomposition(p)
    rng = random.Random(0)
    g = random_digraph(6, 0.3, rng)
    tab = extension_counts(p, dec, g, (0, 1))
    assert set(tab.table) == set(g.arcs)
    assert all(v == 1 for v in tab.table.values())


def test_extension_counts_fig3():
    n, arcs = fig3_pattern_arcs()
    p = analyze(n, arcs)
    dec = find_tau1_decomposition(p, sources=(1,), root=1)
    tab = extension_counts(p, dec, fig3_graph(), (3, 4))
    # two homomorphisms of the middle wedge send both tips to vertex c=2
    assert tab.table[(2, 2)] == 2
    # vertex a=0 has indegree 0: no image tuple may use it
    assert all(0 not in key for key in tab.table)


def test_extension_counts_target_outside_reach():
    p = analyze(3, [(0, 1), (2, 1)])
    dec = find_tau1_decomposition(p, root=0)
    g = random_digraph(4, 0.5, random.Random(1))
    with pytest.raises(ValueError, match="not reachable"):
        extension_counts(p, dec, g, (2,))


def test_extension_totals_match_hom():
    rng = random.Random(11)
    from decount.dagtree import _bits

    for _ in range(120):
        pat = random_connected_pattern(rng.randint(2, 6), 0.5, rng)
        arcs = rng.choice(enumerate_acyclic_orientations(pat))
        op = analyze(pat.n, arcs)
        dec = find_tau1_decomposition(op)
        if dec is None:
            continue
        g = random_digraph(rng.randint(2, 9), 0.35, rng)
        reach = _bits(op.reach[dec.root])
        targets = tuple(sorted(rng.sample(reach, rng.randint(0, min(3, len(reach))))))
        tab = extension_counts(op, dec, g, targets)
        want = hom_bruteforce_directed(g, pat.n, arcs)
        assert tab.total() == want
        # nonzero-entry bound: one entry per distinct target image of some hom
        assert all(v > 0 for v in tab.table.values())
        if targets:
            assert len(tab.table) <= max(want, 1)


def test_extension_counts_subpattern_tree():
    # decomposition over a subset of sources counts the reach-subgraph only
    p = analyze(5, [(0, 2), (1, 2), (0, 3), (4, 3)])
    dec = find_tau1_decomposition(p, sources=(0, 1), root=0)
    rng = random.Random(3)
    for _ in range(20):
        g = random_digraph(rng.randint(2, 8), 0.4, rng)
        tab = extension_counts(p, dec, g, ())
        # reach of {0,1} is {0,1,2,3}: arcs (0,2),(1,2),(0,3)
        want = hom_bruteforce_directed(g, 4, [(0, 2), (1, 2), (0, 3)])
        assert tab.total() == want


def test_hom_count_out_star():
    p = analyze(3, [(0, 1), (0, 2)])
    rng = random.Random(5)
    for _ in range(10):
        g = random_digraph(rng.randint(1, 8), 0.4, rng)
        want = sum(g.outdegree(v) ** 2 for v in range(g.n))
        assert hom_count_tau1(p, g) == want


def test_hom_count_single_edge():
    p = analyze(2, [(0, 1)])
    g = random_digraph(7, 0.4, random.Random(9))
    assert hom_count_tau1(p, g) == g.m


def test_hom_count_multi_source_vs_bruteforce():
    rng = random.Random(23)
    checked = 0
    while checked < 50:
        pat = random_connected_pattern(rng.randint(3, 6), 0.45, rng)
        arcs = rng.choice(enumerate_acyclic_orientations(pat))
        op = analyze(pat.n, arcs)
        if len(op.sources) < 2:
            continue
        dec = find_tau1_decomposition(op)
        if dec is None:
            continue
        g = random_digraph(rng.randint(2, 10), 0.3, rng)
        assert hom_count_tau1(op, g, dec) == \
            hom_bruteforce_directed(g, pat.n, arcs)
        checked += 1


def test_overflow_guard_forces_python_path(monkeypatch):
    # shrinking the int64 budget must reroute every bag to the big-int path
    # without changing any count
    import decount.backend as backend_mod

    rng = random.Random(2)
    cases = []
    for _ in range(15):
        pat = random_connected_pattern(rng.randint(2, 5), 0.5, rng)
        arcs = rng.choice(enumerate_acyclic_orientations(pat))
        op = analyze(pat.n, arcs)
        if find_tau1_decomposition(op) is None:
            continue
        cases.append((op, random_digraph(rng.randint(2, 8), 0.4, rng)))
    set_backend("numba")
    try:
        normal = [hom_count_tau1(op, g) for op, g in cases]
        monkeypatch.setattr(backend_mod, "INT64_SAFE", 2)
        forced = [hom_count_tau1(op, g) for op, g in cases]
    finally:
        set_backend("auto")
    assert normal == forced


def test_backends_agree():
    rng = random.Random(31)
    cases = []
    for _ in range(40):
        pat = random_connected_pattern(rng.randint(2, 6), 0.5, rng)
        arcs = rng.choice(enumerate_acyclic_orientations(pat))
        op = analyze(pat.n, arcs)
        if find_tau1_decomposition(op) is None:
            continue
        cases.append((op, random_digraph(rng.randint(2, 9), 0.35, rng)))
    set_backend("numba")
    try:
        got_nb = [hom_count_tau1(op, g) for op, g in cases]
    finally:
        set_backend("auto")
    set_backend("python")
    try:
        got_py = [hom_count_tau1(op, g) for op, g in cases]
    finally:
        set_backend("auto")
    assert got_nb == got_py
