"""Top-level counting API.

Undirected homomorphism counts aggregate over all acyclic orientations of
the pattern (grouped into isomorphism classes, counted with multiplicity).
Each orientation class is dispatched to the width-1 dynamic program when a
decomposition exists, otherwise to the cycle reduction, otherwise to the
brute-force oracle when explicitly allowed.  Subgraph counts evaluate the
spasm inclusion-exclusion over homomorphism counts.

Classification plans (per orientation class) and spasm decompositions are
cached per canonical pattern; per-graph homomorphism counts are cached on
the oriented input graph, which spasm entries share heavily.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import backend, catalog
from . import _kernels_py
from .dagtree import (DagTreeDecomposition, analyze,
                      find_tau1_decomposition, hom_count_tau1)
from .errors import UnclassifiablePatternError
from .graphs import UndirectedGraph, orient_by_degeneracy
from .oracle import hom_bruteforce_directed
from .patterns import (Pattern, SpasmDecomposition, canonical_digraph_key,
                       enumerate_acyclic_orientations, spasm_coefficients,
                       sub_from_homs)
from .reducer import (ReducibilityCertificate, find_cycle_reduction,
                      hom_count_via_reduction)
from .wsub import default_engine

VERDICT_TAU1 = "tau1"
VERDICT_REDUCIBLE = "reducible"
VERDICT_FALLBACK = "fallback"


@dataclass
class OrientationVerdict:
    """Analysis of one orientation class: the representative arcs, how many
    labeled orientations it covers, and the counting plan found for it."""

    arcs: tuple[tuple[int, int], ...]
    multiplicity: int
    kind: str
    decomposition: DagTreeDecomposition | None = None
    certificate: ReducibilityCertificate | None = None
    k: int | None = None


@dataclass
class ClassificationReport:
    pattern: Pattern
    k_max: int
    verdicts: list[OrientationVerdict]
    overall: str
    k: int | None

    def is_cycle_computable(self, k: int) -> bool:
        """True when every orientation is width-1 or reducible to a cycle
        of length at most k."""
        if any(v.kind == VERDICT_FALLBACK for v in self.verdicts):
            return False
        return all(v.k is None or v.k <= k for v in self.verdicts)


_orientation_classes_cache: dict = {}
_plan_cache: dict = {}
_spasm_cache: dict = {}


def orientation_classes(h: Pattern) -> list[tuple[tuple, int]]:
    """Acyclic orientation classes of h: (representative arc tuple,
    number of labeled orientations in the class)."""
    ck = h.canonical().key
    if ck not in _orientation_classes_cache:
        groups: dict = {}
        for arcs in enumerate_acyclic_orientations(h):
            key = canonical_digraph_key(h.n, arcs)
            if key in groups:
                groups[key][1] += 1
            else:
                groups[key] = [arcs, 1]
        _orientation_classes_cache[ck] = [
            (arcs, mult) for arcs, mult in groups.values()]
    return _orientation_classes_cache[ck]


def _plan_for(n: int, arcs, k_max: int = 5):
    """Counting plan for one orientation: ('tau1', op, dec) or
    ('reducible', op, cert) or ('fallback', op, None).

    Cached by the orientation's canonical form; a cached plan is only
    reused when the labeled arcs match, since decompositions and
    certificates carry vertex ids."""
    key = (canonical_digraph_key(n, arcs), k_max)
    cached = _plan_cache.get(key)
    if cached is not None and cached[1].arcs == tuple(sorted(arcs)):
        return cached
    op = analyze(n, arcs)
    dec = find_tau1_decomposition(op)
    if dec is not None:
        plan = (VERDICT_TAU1, op, dec)
    else:
        cert = find_cycle_reduction(op, k_max)
        if cert is not None:
            plan = (VERDICT_REDUCIBLE, op, cert)
        else:
            plan = (VERDICT_FALLBACK, op, None)
    _plan_cache[key] = plan
    return plan


def classify_pattern(h: Pattern, k_max: int = 5) -> ClassificationReport:
    """Per-orientation verdicts plus the overall pattern verdict."""
    verdicts = []
    for arcs, mult in orientation_classes(h):
        kind, op, aux = _plan_for(h.n, arcs, k_max)
        if kind == VERDICT_TAU1:
            verdicts.append(OrientationVerdict(arcs, mult, kind,
                                               decomposition=aux))
        elif kind == VERDICT_REDUCIBLE:
            verdicts.append(OrientationVerdict(arcs, mult, kind,
                                               certificate=aux, k=aux.k))
        else:
            verdicts.append(OrientationVerdict(arcs, mult, kind))
    if any(v.kind == VERDICT_FALLBACK for v in verdicts):
        overall, k = "not-computable", None
    elif all(v.kind == VERDICT_TAU1 for v in verdicts):
        overall, k = "all-tau1", None
    else:
        k = max(v.k for v in verdicts if v.k is not None)
        overall = f"C{k}-computable"
    return ClassificationReport(h, k_max, verdicts, overall, k)


def _hom_oriented(dg, n: int, arcs, allow_fallback: bool) -> int:
    """Hom count of one orientation into the oriented input graph, with
    per-graph memoization keyed by the orientation's canonical form."""
    key = canonical_digraph_key(n, arcs)
    cached = dg._hom_cache.get(key)
    if cached is not None:
        return cached
    kind, op, aux = _plan_for(n, arcs)
    if kind == VERDICT_TAU1:
        count = hom_count_tau1(op, dg, aux)
    elif kind == VERDICT_REDUCIBLE:
        count = hom_count_via_reduction(aux, op, dg, default_engine(aux.k))
    elif allow_fallback:
        count = hom_bruteforce_directed(dg, n, arcs)
    else:
        raise UnclassifiablePatternError(
            f"orientation {arcs} is neither width-1 nor cycle-reducible; "
            "rerun with the brute-force fallback enabled to count it anyway")
    dg._hom_cache[key] = count
    return count


def hom_count(g: UndirectedGraph, h: Pattern, allow_fallback: bool = False) -> int:
    """Exact Hom(g, h): sum of per-orientation counts over the degeneracy
    orientation of g."""
    dg = orient_by_degeneracy(g)
    total = 0
    for arcs, mult in orientation_classes(h):
        total += mult * _hom_oriented(dg, h.n, arcs, allow_fallback)
    return total


def sub_count(g: UndirectedGraph, h: Pattern, allow_fallback: bool = False) -> int:
    """Exact Sub(g, h) via the spasm inclusion-exclusion."""
    dec = _spasm_decomposition(h)
    homs = {p.canonical().key: hom_count(g, p, allow_fallback)
            for p, _ in dec.entries}
    return sub_from_homs(dec, homs)


def _spasm_decomposition(h: Pattern) -> SpasmDecomposition:
    ck = h.canonical().key
    if ck not in _spasm_cache:
        _spasm_cache[ck] = spasm_coefficients(h)
    return _spasm_cache[ck]


def count_cycles(g: UndirectedGraph, k: int) -> int:
    """Exact number of k-cycles for k in 3..10.

    Lengths 3 and 4 run directly on the degeneracy orientation; longer
    cycles go through the spasm pipeline."""
    if not 3 <= k <= 10:
        raise ValueError("cycle length must be between 3 and 10")
    if k == 3:
        dg = orient_by_degeneracy(g)
        kern = backend.numba_kernels()
        if kern is not None and g.n > 64:
            return int(kern.triangle_count_csr(dg.out_indptr, dg.out_indices))
        return _kernels_py.triangle_count_csr(dg.out_indptr, dg.out_indices)
    if k == 4:
        return _count_c4_oriented(g)
    return sub_count(g, catalog.cycle(k))


def _count_c4_oriented(g: UndirectedGraph) -> int:
    """4-cycles by pairing out-out wedges and directed 2-paths with common
    endpoints on the degeneracy orientation.

    Each acyclically oriented 4-cycle has exactly one opposite-vertex split
    into two wedges that are both out-out or path-through, so the pair
    counts below cover every cycle exactly once."""
    dg = orient_by_degeneracy(g)
    oo: dict[tuple[int, int], int] = {}
    po: dict[tuple[int, int], int] = {}
    for x in range(g.n):
        outs = [int(t) for t in dg.out_neighbors(x)]
        for i in range(len(outs)):
            for j in range(i + 1, len(outs)):
                a, b = outs[i], outs[j]
                key = (a, b) if a < b else (b, a)
                oo[key] = oo.get(key, 0) + 1
        for a in [int(t) for t in dg.in_neighbors(x)]:
            for b in outs:
                key = (a, b)
                po[key] = po.get(key, 0) + 1
    total = 0
    pairs = set(oo)
    pairs.update((min(a, b), max(a, b)) for a, b in po)
    for u, v in pairs:
        c_oo = oo.get((u, v), 0)
        p_uv = po.get((u, v), 0)
        p_vu = po.get((v, u), 0)
        total += c_oo * (c_oo - 1) // 2
        total += c_oo * (p_uv + p_vu)
        total += p_uv * (p_uv - 1) // 2 + p_vu * (p_vu - 1) // 2
    return total
