"""Cycle-reducibility certificates and the reduced layered weighted graph.

A directed pattern reduces to k-cycle counting when its sources split into
k cyclically arranged sets whose reach-subgraphs pairwise intersect only
in the pattern's intersection vertices, in the cyclic fashion checked
below.  The reduced graph then has one layer per intersection set, one
vertex per realized image tuple, and edge weights equal to extension
counts; its weighted colorful k-cycle sum equals the homomorphism count.

Indexing note: blocks and layers are 0-based here.  Block i spans layers
(i-1) mod k and i: its intersection set with the next block is I_i, with
the previous block I_{i-1}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dagtree import (DagTreeDecomposition, OrientedPattern, _bits,
                      decomposition_is_valid, extension_counts,
                      find_tau1_decomposition)
from .errors import CapExceededError, IntegrityError
from .graphs import DirectedGraph

MAX_SOURCES = 8


@dataclass
class ReducibilityCertificate:
    """Witness of k-cycle reducibility: the cyclic source partition, the
    designated per-block sources, the derived intersection sets, and a
    width-1 decomposition of each block rooted at its designated source."""

    k: int
    source_sets: tuple[tuple[int, ...], ...]
    designated: tuple[int, ...]
    intersection_sets: tuple[tuple[int, ...], ...]
    i_star: tuple[int, ...]
    decompositions: tuple[DagTreeDecomposition, ...]


def _set_partitions_into(elems: tuple[int, ...], k: int):
    """Partitions of elems into exactly k nonempty blocks, deterministic
    order, blocks ordered by smallest member."""
    n = len(elems)
    blocks: list[list[int]] = []

    def rec(i: int):
        if n - i < k - len(blocks):
            return
        if i == n:
            if len(blocks) == k:
                yield [tuple(b) for b in blocks]
            return
        x = elems[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1)
            b.pop()
        if len(blocks) < k:
            blocks.append([x])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


def _cyclic_arrangements(k: int):
    """Orders of blocks 0..k-1 around a cycle, up to rotation and
    reflection: position 0 pinned to block 0, reflections deduplicated."""
    from itertools import permutations

    for perm in permutations(range(1, k)):
        arr = (0,) + perm
        reflected = (0,) + tuple(reversed(perm))
        if arr <= reflected:
            yield arr


def _contiguous_cyclic(indices: set[int], k: int) -> bool:
    """True when the index set is a contiguous run modulo k."""
    if len(indices) in (0, k):
        return True
    runs = 0
    for i in range(k):
        if i in indices and (i - 1) % k not in indices:
            runs += 1
    return runs == 1


def find_cycle_reduction(p: OrientedPattern, k_max: int = 5
                         ) -> ReducibilityCertificate | None:
    """Search k = 3..k_max for a valid reducibility certificate; smallest k
    first, partitions and arrangements in deterministic order; None when
    every candidate fails."""
    q = len(p.sources)
    if q > MAX_SOURCES:
        raise CapExceededError(f"{q} sources exceeds cap {MAX_SOURCES}")
    from itertools import product

    for k in range(3, k_max + 1):
        if q < k:
            break
        for blocks in _set_partitions_into(p.sources, k):
            block_tau1 = {}
            arrangements_ok = True
            for b in blocks:
                dec = find_tau1_decomposition(p, sources=b)
                if dec is None:
                    arrangements_ok = False
                    break
                block_tau1[b] = dec
            if not arrangements_ok:
                continue
            reach = {b: p.reach_of(b) for b in blocks}
            for arr in _cyclic_arrangements(k):
                ordered = [blocks[a] for a in arr]
                R = [reach[b] for b in ordered]
                I = [R[i] & R[(i + 1) % k] for i in range(k)]
                istar = 0
                for m in I:
                    istar |= m
                ok = True
                for i in range(k):
                    if (R[i] & istar) != (I[(i - 1) % k] | I[i]):
                        ok = False
                        break
                if not ok:
                    continue
                for v in _bits(istar):
                    where = {i for i in range(k) if I[i] >> v & 1}
                    if not _contiguous_cyclic(where, k):
                        ok = False
                        break
                if not ok:
                    continue
                cands = []
                for i in range(k):
                    need = I[(i - 1) % k] | I[i]
                    ci = [s for s in ordered[i] if (p.reach[s] & need) == need]
                    if not ci:
                        ok = False
                        break
                    cands.append(ci)
                if not ok:
                    continue
                nonadj = [(i, j) for i in range(k) for j in range(i + 1, k)
                          if (j - i) % k not in (1, k - 1)]
                for des in product(*cands):
                    good = True
                    for i, j in nonadj:
                        both = R[i] & R[j]
                        if both & ~istar:
                            good = False
                            break
                        if both != (p.reach[des[i]] & p.reach[des[j]]):
                            good = False
                            break
                    if good:
                        decs = tuple(
                            block_tau1[ordered[i]].rerooted(des[i])
                            for i in range(k))
                        return ReducibilityCertificate(
                            k=k,
                            source_sets=tuple(ordered),
                            designated=tuple(des),
                            intersection_sets=tuple(
                                tuple(_bits(m)) for m in I),
                            i_star=tuple(_bits(istar)),
                            decompositions=decs)
    return None


def verify_certificate(p: OrientedPattern, cert: ReducibilityCertificate) -> bool:
    """Independent re-validation of a certificate, condition by condition."""
    k = cert.k
    if k < 3:
        return False
    srcs = [s for b in cert.source_sets for s in b]
    if sorted(srcs) != sorted(p.sources) or len(set(srcs)) != len(srcs):
        return False
    R = [p.reach_of(b) for b in cert.source_sets]
    I = []
    for i in range(k):
        mask = 0
        for v in cert.intersection_sets[i]:
            mask |= 1 << v
        I.append(mask)
    istar = 0
    for m in I:
        istar |= m
    if tuple(_bits(istar)) != cert.i_star:
        return False
    if istar & ~p.intersection_mask:
        return False
    for i in range(k):
        # condition 1: consecutive reach intersections realize I_i
        if (R[i] & R[(i + 1) % k]) != I[i]:
            return False
        # condition 2 with I* as the union of the intersection sets
        if (R[i] & istar) != (I[(i - 1) % k] | I[i]):
            return False
    for v in _bits(istar):
        if not _contiguous_cyclic({i for i in range(k) if I[i] >> v & 1}, k):
            return False
    for i in range(k):
        s_i = cert.designated[i]
        if s_i not in cert.source_sets[i]:
            return False
        need = I[(i - 1) % k] | I[i]
        if (p.reach[s_i] & need) != need:
            return False
        dec = cert.decompositions[i]
        if dec.root != s_i:
            return False
        if not decomposition_is_valid(p, dec, sources=cert.source_sets[i]):
            return False
    for i in range(k):
        for j in range(i + 1, k):
            if (j - i) % k in (1, k - 1):
                continue
            both = R[i] & R[j]
            if both & ~istar:
                return False
            if both != (p.reach[cert.designated[i]] & p.reach[cert.designated[j]]):
                return False
    return True


class LayeredWeightedGraph:
    """k colored layers; vertices are realized image tuples; weighted
    undirected edges only between cyclically consecutive layers, stored in
    the layer i -> i+1 direction."""

    def __init__(self, k: int):
        self.k = k
        self.layer_keys: list[list[tuple]] = [[] for _ in range(k)]
        self.layer_index: list[dict[tuple, int]] = [{} for _ in range(k)]
        # edges[i]: (u local in layer i, v local in layer (i+1) % k) -> weight
        self.edges: list[dict[tuple[int, int], int]] = [{} for _ in range(k)]

    def _vertex(self, layer: int, key: tuple) -> int:
        idx = self.layer_index[layer].get(key)
        if idx is None:
            idx = len(self.layer_keys[layer])
            self.layer_index[layer][key] = idx
            self.layer_keys[layer].append(key)
        return idx

    def add_edge(self, layer: int, key_u: tuple, key_v: tuple, weight: int):
        """Add an edge between (key_u @ layer) and (key_v @ layer+1)."""
        if weight <= 0:
            raise IntegrityError("reduced-graph edge weights must be positive")
        u = self._vertex(layer, key_u)
        v = self._vertex((layer + 1) % self.k, key_v)
        if (u, v) in self.edges[layer]:
            raise IntegrityError("duplicate reduced-graph edge")
        self.edges[layer][(u, v)] = weight

    def edge_weight(self, layer: int, key_u: tuple, key_v: tuple):
        u = self.layer_index[layer].get(key_u)
        v = self.layer_index[(layer + 1) % self.k].get(key_v)
        if u is None or v is None:
            return None
        return self.edges[layer].get((u, v))

    @property
    def num_vertices(self) -> int:
        return sum(len(keys) for keys in self.layer_keys)

    @property
    def num_edges(self) -> int:
        return sum(len(e) for e in self.edges)

    def layer_sizes(self) -> list[int]:
        return [len(keys) for keys in self.layer_keys]

    def __repr__(self):
        return (f"LayeredWeightedGraph(k={self.k}, v={self.num_vertices}, "
                f"e={self.num_edges})")


def build_reduced_graph(cert: ReducibilityCertificate, p: OrientedPattern,
                        g: DirectedGraph) -> LayeredWeightedGraph:
    """Materialize the reduced graph: for each block, extension counts
    keyed on the union of its two adjacent intersection sets become edges
    between the corresponding layers."""
    if not verify_certificate(p, cert):
        raise IntegrityError("invalid reducibility certificate")
    k = cert.k
    lg = LayeredWeightedGraph(k)
    for i in range(k):
        prev_set = cert.intersection_sets[(i - 1) % k]
        cur_set = cert.intersection_sets[i]
        targets = tuple(sorted(set(prev_set) | set(cur_set)))
        pos = {v: j for j, v in enumerate(targets)}
        prev_pos = [pos[v] for v in prev_set]
        cur_pos = [pos[v] for v in cur_set]
        tab = extension_counts(p, cert.decompositions[i], g, targets)
        for key, w in tab.table.items():
            key_prev = tuple(key[j] for j in prev_pos)
            key_cur = tuple(key[j] for j in cur_pos)
            lg.add_edge((i - 1) % k, key_prev, key_cur, w)
    return lg


def hom_count_via_reduction(cert: ReducibilityCertificate,
                            p: OrientedPattern, g: DirectedGraph,
                            wsub_engine) -> int:
    """Hom(g, p) computed as the weighted colorful k-cycle sum of the
    reduced graph."""
    lg = build_reduced_graph(cert, p, g)
    return wsub_engine(lg)
