"""Oriented-pattern analysis and the width-1 DAG-tree machinery.

An oriented pattern is a small DAG.  Sources are indegree-0 vertices;
Reach(s) is everything reachable from s (including s); intersection
vertices are reachable from at least two sources.  A width-1 DAG-tree
decomposition is a tree whose nodes are the singleton sources such that
for any two nodes, every node on the tree path between them reaches the
intersection of their reach sets.

Given such a tree, extension_counts() runs a bottom-up dynamic program:
each node enumerates the homomorphisms of its source's reach-subgraph by
rooted DFS along out-arcs (at most n*d^k candidates), verifies non-tree
arcs, multiplies in child tables keyed on shared-reach image tuples, and
aggregates onto its own key; the root aggregates onto the requested
target tuple.  Tables hold exact counts: the numba path is used only
when an a-priori int64 bound holds, otherwise pure Python big ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import backend
from .errors import CapExceededError
from .graphs import DirectedGraph

MAX_SOURCES = 8


def _bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


class OrientedPattern:
    """A DAG pattern with precomputed sources, reach sets (bitmasks,
    self-inclusive) and intersection vertices."""

    def __init__(self, n: int, arcs):
        arcs = tuple(sorted((int(u), int(v)) for u, v in arcs))
        self.n = n
        self.arcs = arcs
        self.out_mask = [0] * n
        self.in_mask = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError("self-loop in oriented pattern")
            self.out_mask[u] |= 1 << v
            self.in_mask[v] |= 1 << u
        if not self._acyclic():
            raise ValueError("oriented pattern must be acyclic")
        self.sources = tuple(v for v in range(n) if self.in_mask[v] == 0)
        self.reach = {}
        for s in self.sources:
            seen = 1 << s
            frontier = seen
            while frontier:
                nxt = 0
                v = 0
                f = frontier
                while f:
                    if f & 1:
                        nxt |= self.out_mask[v]
                    f >>= 1
                    v += 1
                frontier = nxt & ~seen
                seen |= nxt
            self.reach[s] = seen
        counts = [0] * n
        for s in self.sources:
            m = self.reach[s]
            v = 0
            while m:
                if m & 1:
                    counts[v] += 1
                m >>= 1
                v += 1
        self.intersections = tuple(v for v in range(n) if counts[v] >= 2)
        self.intersection_mask = 0
        for v in self.intersections:
            self.intersection_mask |= 1 << v
        self._tau1_cache: dict = {}

    def _acyclic(self) -> bool:
        indeg = [bin(m).count("1") for m in self.in_mask]
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            w = 0
            m = self.out_mask[v]
            while m:
                if m & 1:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        stack.append(w)
                m >>= 1
                w += 1
        return seen == self.n

    def reach_of(self, sources) -> int:
        m = 0
        for s in sources:
            m |= self.reach[s]
        return m

    def __repr__(self):
        return (f"OrientedPattern(n={self.n}, arcs={len(self.arcs)}, "
                f"sources={self.sources})")


def analyze(n: int, arcs) -> OrientedPattern:
    """Build an OrientedPattern; raises ValueError on cyclic input."""
    return OrientedPattern(n, arcs)


@dataclass
class DagTreeDecomposition:
    """Width-1 decomposition: a rooted tree over singleton source bags."""

    root: int
    parent: dict[int, int | None]  # source -> parent source (root -> None)

    @property
    def sources(self) -> tuple[int, ...]:
        return tuple(sorted(self.parent))

    @property
    def width(self) -> int:
        return 1

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {s: [] for s in self.parent}
        for s, par in self.parent.items():
            if par is not None:
                ch[par].append(s)
        for lst in ch.values():
            lst.sort()
        return ch

    def rerooted(self, new_root: int) -> "DagTreeDecomposition":
        if new_root not in self.parent:
            raise ValueError(f"{new_root} is not a bag of this decomposition")
        parent = dict(self.parent)
        chain = []
        v = new_root
        while v is not None:
            chain.append(v)
            v = parent[v]
        for i in range(len(chain) - 1, 0, -1):
            parent[chain[i]] = chain[i - 1]
        parent[new_root] = None
        return DagTreeDecomposition(new_root, parent)


def decomposition_is_valid(p: OrientedPattern, dec: DagTreeDecomposition,
                           sources=None) -> bool:
    """Direct check of the path-reach containment condition over the given
    source set (default: all sources of p)."""
    srcs = tuple(sorted(sources if sources is not None else p.sources))
    if tuple(sorted(dec.parent)) != srcs:
        return False
    depth = {}
    for s in srcs:
        d = 0
        v = s
        while dec.parent[v] is not None:
            v = dec.parent[v]
            d += 1
        if v != dec.root:
            return False
        depth[s] = d
    for i, s1 in enumerate(srcs):
        for s2 in srcs[i + 1:]:
            need = p.reach[s1] & p.reach[s2]
            if not need:
                continue
            a, b = s1, s2
            da, db = depth[a], depth[b]
            while da > db:
                a = dec.parent[a]
                da -= 1
                if a != s2 and (need & ~p.reach[a]):
                    return False
            while db > da:
                b = dec.parent[b]
                db -= 1
                if b != s1 and (need & ~p.reach[b]):
                    return False
            while a != b:
                a = dec.parent[a]
                b = dec.parent[b]
                if a != b:
                    for mid in (a, b):
                        if need & ~p.reach[mid]:
                            return False
                else:
                    if a not in (s1, s2) and (need & ~p.reach[a]):
                        return False
    return True


def _prufer_trees(q: int):
    """All labeled trees on 0..q-1 as edge lists, via Prufer sequences."""
    import heapq

    if q == 1:
        yield []
        return
    if q == 2:
        yield [(0, 1)]
        return
    for seq in product(range(q), repeat=q - 2):
        deg = [1] * q
        for x in seq:
            deg[x] += 1
        leaves = [v for v in range(q) if deg[v] == 1]
        heapq.heapify(leaves)
        edges = []
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, x))
            deg[x] -= 1
            if deg[x] == 1:
                heapq.heappush(leaves, x)
        u = heapq.heappop(leaves)
        v = heapq.heappop(leaves)
        edges.append((u, v))
        yield edges


def find_tau1_decomposition(p: OrientedPattern, sources=None,
                            root: int | None = None) -> DagTreeDecomposition | None:
    """Search for a width-1 decomposition over the given sources (default
    all), optionally re-rooted at a requested source.  Exhaustive over
    labeled trees with early validity pruning; None when no tree exists.

    Validity does not depend on the root, so the cache is root-free.
    """
    srcs = tuple(sorted(sources if sources is not None else p.sources))
    if len(srcs) > MAX_SOURCES:
        raise CapExceededError(f"{len(srcs)} sources exceeds cap {MAX_SOURCES}")
    if root is not None and root not in srcs:
        raise ValueError("requested root is not in the source set")

    if srcs in p._tau1_cache:
        dec = p._tau1_cache[srcs]
    else:
        dec = _search_tree(p, srcs)
        p._tau1_cache[srcs] = dec
    if dec is None:
        return None
    if root is not None and dec.root != root:
        dec = dec.rerooted(root)
    return dec


def _search_tree(p: OrientedPattern, srcs) -> DagTreeDecomposition | None:
    q = len(srcs)
    if q == 1:
        return DagTreeDecomposition(srcs[0], {srcs[0]: None})
    if q == 2:
        return DagTreeDecomposition(srcs[0], {srcs[0]: None, srcs[1]: srcs[0]})
    # labels sorted by descending reach size: the all-zero Prufer sequence
    # (a star at the widest source) is tried first
    labels = sorted(srcs, key=lambda s: (-bin(p.reach[s]).count("1"), s))
    pair_need = {}
    for i in range(q):
        for j in range(i + 1, q):
            need = p.reach[labels[i]] & p.reach[labels[j]]
            if need:
                pair_need[(i, j)] = need
    for edges in _prufer_trees(q):
        adj = [[] for _ in range(q)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        parent_idx = [-1] * q
        depth = [0] * q
        order = [0]
        seen = [False] * q
        seen[0] = True
        for v in order:
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent_idx[w] = v
                    depth[w] = depth[v] + 1
                    order.append(w)
        ok = True
        for (i, j), need in pair_need.items():
            a, b = i, j
            while depth[a] > depth[b]:
                a = parent_idx[a]
                if a != j and (need & ~p.reach[labels[a]]):
                    ok = False
                    break
            if not ok:
                break
            while depth[b] > depth[a]:
                b = parent_idx[b]
                if b != i and (need & ~p.reach[labels[b]]):
                    ok = False
                    break
            if not ok:
                break
            while a != b:
                a = parent_idx[a]
                b = parent_idx[b]
                for mid in {a, b}:
                    if mid not in (i, j) and (need & ~p.reach[labels[mid]]):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            parent = {labels[0]: None}
            for v in range(1, q):
                parent[labels[v]] = labels[parent_idx[v]]
            return DagTreeDecomposition(labels[0], parent)
    return None


@dataclass
class ExtensionTable:
    """Exact extension counts keyed by image tuples of ``targets`` (pattern
    vertex ids in ascending order).  Zero-count entries are absent."""

    targets: tuple[int, ...]
    table: dict[tuple[int, ...], int]

    def total(self) -> int:
        return sum(self.table.values())


class _BagPlan:
    """Enumeration plan for one decomposition node: BFS vertex order of the
    source's reach-subgraph, non-tree arc checks grouped by the position at
    which they close, child-table keys grouped likewise."""

    def __init__(self, p: OrientedPattern, source: int, child_keys,
                 out_key_vertices):
        self.source = source
        reach_mask = p.reach[source]
        pos_of = {}
        order = [source]
        pos_of[source] = 0
        tree_parent = [-1]
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            w = 0
            m = p.out_mask[v] & reach_mask
            while m:
                if m & 1 and w not in pos_of:
                    pos_of[w] = len(order)
                    order.append(w)
                    tree_parent.append(pos_of[v])
                m >>= 1
                w += 1
        assert len(order) == bin(reach_mask).count("1")
        self.order = order
        self.pos_of = pos_of
        self.tree_parent = tree_parent
        k = len(order)
        # every arc inside the reach-subgraph except the BFS tree arcs must
        # be verified once both endpoints are placed
        tree_arcs = {(self.tree_parent[t], t) for t in range(1, k)}
        checks = [[] for _ in range(k)]
        for u, v in p.arcs:
            if u in pos_of and v in pos_of:
                pu, pv = pos_of[u], pos_of[v]
                if (pu, pv) not in tree_arcs:
                    checks[max(pu, pv)].append((pu, pv))
        self.checks = checks
        self.children = [[] for _ in range(k)]  # (child index, key positions)
        for ci, key_vertices in enumerate(child_keys):
            kp = [pos_of[v] for v in key_vertices]
            t = max(kp) if kp else 0
            self.children[t].append((ci, kp))
        self.out_key_pos = [pos_of[v] for v in out_key_vertices]


def _run_bag_python(g: DirectedGraph, plan: _BagPlan, child_tables,
                    base: int) -> dict[int, int]:
    """Pure-Python bag enumeration: exact big integers."""
    k = len(plan.order)
    out_ind = g.out_indices
    out_ptr = g.out_indptr
    img = [0] * k
    mult = [1] * k
    table: dict[int, int] = {}
    checks = plan.checks
    children = plan.children
    out_key_pos = plan.out_key_pos
    has_arc = g.has_arc

    def rec(t: int):
        if t == k:
            key = 0
            p = 1
            for q in out_key_pos:
                key += img[q] * p
                p *= base
            m = mult[k - 1] if k else 1
            table[key] = table.get(key, 0) + m
            return
        if t == 0:
            cands = range(g.n)
        else:
            par = img[plan.tree_parent[t]]
            cands = out_ind[out_ptr[par]:out_ptr[par + 1]]
        for v in cands:
            v = int(v)
            img[t] = v
            ok = True
            for pu, pv in checks[t]:
                if not has_arc(img[pu], img[pv]):
                    ok = False
                    break
            if not ok:
                continue
            m = mult[t - 1] if t else 1
            for ci, kp in children[t]:
                key = 0
                p = 1
                for q in kp:
                    key += img[q] * p
                    p *= base
                val = child_tables[ci].get(key)
                if val is None:
                    ok = False
                    break
                m *= val
            if not ok:
                continue
            mult[t] = m
            rec(t + 1)

    rec(0)
    return table


def _run_bag_numba(g: DirectedGraph, plan: _BagPlan, child_tables,
                   base: int) -> dict[int, int]:
    import numpy as np

    kern = backend.numba_kernels()
    k = len(plan.order)
    parent = np.array(plan.tree_parent, dtype=np.int64)
    cs, cd, coff = [], [], [0]
    for t in range(k):
        for pu, pv in plan.checks[t]:
            cs.append(pu)
            cd.append(pv)
        coff.append(len(cs))
    ckp, ckp_off, ch_by_time = [], [0], [0]
    tabs = []
    for t in range(k):
        for ci, kp in plan.children[t]:
            ckp.extend(kp)
            ckp_off.append(len(ckp))
            tabs.append(child_tables[ci])
        ch_by_time.append(len(tabs))
    ckeys, cvals, ctab_off = [], [], [0]
    for tab in tabs:
        items = sorted(tab.items())
        ckeys.extend(kk for kk, _ in items)
        cvals.extend(vv for _, vv in items)
        ctab_off.append(len(ckeys))
    keys, vals = kern.rooted_hom_tables(
        g.out_indptr, g.out_indices, g.n,
        parent,
        np.array(cs, dtype=np.int64), np.array(cd, dtype=np.int64),
        np.array(coff, dtype=np.int64),
        np.array(ckp, dtype=np.int64), np.array(ckp_off, dtype=np.int64),
        np.array(ch_by_time, dtype=np.int64),
        np.array(ckeys, dtype=np.int64), np.array(cvals, dtype=np.int64),
        np.array(ctab_off, dtype=np.int64),
        np.array(plan.out_key_pos, dtype=np.int64),
        base)
    return {int(kk): int(vv) for kk, vv in zip(keys, vals)}


def extension_counts(p: OrientedPattern, dec: DagTreeDecomposition,
                     g: DirectedGraph, targets) -> ExtensionTable:
    """Exact extension counts of the sub-pattern reachable from the
    decomposition's sources, keyed by images of ``targets``.

    ``targets`` must lie inside Reach(root).  The decomposition's source
    set may be a subset of p's sources; the DP then counts homomorphisms
    of the corresponding reach-subgraph.
    """
    targets = tuple(sorted(targets))
    root_reach = p.reach[dec.root]
    for v in targets:
        if not (root_reach >> v & 1):
            raise ValueError(f"target vertex {v} not reachable from root "
                             f"{dec.root}")
    children = dec.children()
    base = max(g.n, 1)

    def post_order(s):
        out = []
        for c in children[s]:
            out.extend(post_order(c))
        out.append(s)
        return out

    order = post_order(dec.root)
    tables: dict[int, dict[int, int]] = {}
    for s in order:
        ch = children[s]
        child_keys = []
        child_tabs = []
        for c in ch:
            jc = _bits(p.reach[s] & p.reach[c])
            child_keys.append(jc)
            child_tabs.append(tables[c])
        if s == dec.root:
            out_key = list(targets)
        else:
            out_key = _bits(p.reach[s] & p.reach[dec.parent[s]])
        plan = _BagPlan(p, s, child_keys, out_key)
        kb = len(plan.order)
        use_numba = backend.numba_kernels() is not None
        if use_numba:
            max_klen = max([len(out_key)] + [len(c) for c in child_keys] + [1])
            if base ** max_klen >= backend.INT64_SAFE:
                use_numba = False
        if use_numba:
            d = g.max_outdegree
            leaves = g.n * (d ** (kb - 1)) if kb > 1 else g.n
            bound = leaves
            for tab in child_tabs:
                bound *= max(tab.values(), default=0)
            if bound >= backend.INT64_SAFE:
                use_numba = False
        if use_numba:
            tables[s] = _run_bag_numba(g, plan, child_tabs, base)
        else:
            tables[s] = _run_bag_python(g, plan, child_tabs, base)
        for c in ch:
            del tables[c]

    packed = tables[dec.root]
    out: dict[tuple[int, ...], int] = {}
    L = len(targets)
    for key, val in packed.items():
        tup = []
        kk = key
        for _ in range(L):
            tup.append(kk % base)
            kk //= base
        out[tuple(tup)] = val
    return ExtensionTable(targets, out)


def hom_count_tau1(p: OrientedPattern, g: DirectedGraph,
                   dec: DagTreeDecomposition | None = None) -> int:
    """Exact Hom(g, p) for a pattern admitting a width-1 decomposition."""
    if dec is None:
        dec = find_tau1_decomposition(p)
    if dec is None:
        raise ValueError("pattern has no width-1 decomposition")
    table = extension_counts(p, dec, g, ())
    return table.table.get((), 0)
