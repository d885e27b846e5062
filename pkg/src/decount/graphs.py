"""Input graph structures: undirected graphs, acyclic orientations,
degeneracy ordering, and edge-list ingestion.

Vertices are dense 0-based ids.  Ingestion remaps arbitrary non-negative
integer labels to dense ids (ascending label order) and keeps the mapping
for output.  Adjacency is CSR (indptr/indices numpy arrays) with sorted
neighbor lists, so membership tests are binary searches and the kernel
modules can consume the arrays directly.
"""

from __future__ import annotations

import io
from typing import Iterable

import numpy as np

from . import backend
from .errors import InputFormatError


class UndirectedGraph:
    """A simple undirected graph.

    Invariants: no self-loops, no parallel edges, adjacency symmetric,
    m == sum(degrees) / 2.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 labels: list[int] | None = None):
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise InputFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputFormatError(f"edge ({u},{v}) out of range for n={n}")
            edge_set.add((u, v) if u < v else (v, u))
        self.n = n
        self.m = len(edge_set)
        self.edges = sorted(edge_set)
        deg = np.zeros(n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=self.indptr[1:])
        self.indices = np.zeros(self.m * 2, dtype=np.int64)
        fill = self.indptr[:-1].copy()
        for u, v in self.edges:
            self.indices[fill[u]] = v
            fill[u] += 1
            self.indices[fill[v]] = u
            fill[v] += 1
        for v in range(n):
            self.indices[self.indptr[v]:self.indptr[v + 1]].sort()
        self.labels = labels if labels is not None else list(range(n))
        self._degeneracy: int | None = None
        self._orientation: DirectedGraph | None = None

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    @property
    def degeneracy(self) -> int:
        if self._degeneracy is None:
            _, kappa = degeneracy_order(self)
            self._degeneracy = kappa
        return self._degeneracy

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, m={self.m})"


class DirectedGraph:
    """A directed graph with both out- and in-adjacency in CSR form.

    The graphs produced by orient_by_degeneracy are acyclic with
    max_outdegree <= degeneracy; acyclicity is asserted in tests, not here.
    """

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arc_set = set()
        for u, v in arcs:
            if u == v:
                raise InputFormatError(f"self-loop at vertex {u}")
            arc_set.add((u, v))
        self.n = n
        self.arcs = sorted(arc_set)
        self.m = len(self.arcs)
        outdeg = np.zeros(n, dtype=np.int64)
        indeg = np.zeros(n, dtype=np.int64)
        for u, v in self.arcs:
            outdeg[u] += 1
            indeg[v] += 1
        self.out_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(outdeg, out=self.out_indptr[1:])
        self.out_indices = np.zeros(self.m, dtype=np.int64)
        self.in_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(indeg, out=self.in_indptr[1:])
        self.in_indices = np.zeros(self.m, dtype=np.int64)
        fo = self.out_indptr[:-1].copy()
        fi = self.in_indptr[:-1].copy()
        for u, v in self.arcs:
            self.out_indices[fo[u]] = v
            fo[u] += 1
            self.in_indices[fi[v]] = u
            fi[v] += 1
        for v in range(n):
            self.out_indices[self.out_indptr[v]:self.out_indptr[v + 1]].sort()
            self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]].sort()
        self.max_outdegree = int(outdeg.max()) if n else 0
        self._hom_cache: dict = {}

    def out_neighbors(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v]:self.out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]]

    def outdegree(self, v: int) -> int:
        return int(self.out_indptr[v + 1] - self.out_indptr[v])

    def has_arc(self, u: int, v: int) -> bool:
        row = self.out_neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def undirected_view(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, self.arcs)

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, m={self.m}, d+={self.max_outdegree})"


def load_edge_list(stream, dedupe: bool = True) -> UndirectedGraph:
    """Parse a whitespace-separated edge list into a validated simple graph.

    One edge per line, '#' starts a comment line, blank lines are skipped.
    Arbitrary non-negative integer labels are remapped to dense 0-based ids
    in ascending label order; the mapping is kept in ``graph.labels``.

    Rejects self-loops always; rejects duplicate edges unless dedupe=True.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    raw_edges = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected two tokens, got {len(parts)}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError(f"line {lineno}: non-integer token in {line!r}") from None
        if a < 0 or b < 0:
            raise InputFormatError(f"line {lineno}: negative vertex label")
        if a == b:
            raise InputFormatError(f"line {lineno}: self-loop at {a}")
        raw_edges.append((a, b, lineno))

    labels = sorted({x for a, b, _ in raw_edges for x in (a, b)})
    remap = {lab: i for i, lab in enumerate(labels)}
    seen = set()
    edges = []
    for a, b, lineno in raw_edges:
        e = (remap[a], remap[b]) if remap[a] < remap[b] else (remap[b], remap[a])
        if e in seen:
            if not dedupe:
                raise InputFormatError(f"line {lineno}: duplicate edge ({a},{b})")
            continue
        seen.add(e)
        edges.append(e)
    return UndirectedGraph(len(labels), edges, labels=labels)


def degeneracy_order(g: UndirectedGraph) -> tuple[list[int], int]:
    """Iterated minimum-degree removal in O(n+m).

    Ties break on the smallest vertex id (bucket queue scans ids in
    order), which makes the ordering, and everything downstream of it,
    deterministic.  Returns (removal order, degeneracy).
    """
    kern = backend.numba_kernels()
    if kern is not None and g.n > 64:
        order, kappa = kern.degeneracy_order_csr(g.indptr, g.indices, g.n)
        return list(map(int, order)), int(kappa)
    return _degeneracy_order_py(g)


def _degeneracy_order_py(g: UndirectedGraph) -> tuple[list[int], int]:
    import heapq

    n = g.n
    deg = [g.degree(v) for v in range(n)]
    # lazy min-heap over keys deg*n + id: min degree first, smallest id on ties
    heap = [deg[v] * n + v for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    kappa = 0
    while len(order) < n:
        key = heapq.heappop(heap)
        d, v = divmod(key, n)
        if removed[v] or deg[v] != d:
            continue
        removed[v] = True
        order.append(v)
        kappa = max(kappa, d)
        for u in g.neighbors(v):
            u = int(u)
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, deg[u] * n + u)
    return order, kappa


def orient_by_degeneracy(g: UndirectedGraph) -> DirectedGraph:
    """Acyclic orientation along the degeneracy order.

    Each edge points from the endpoint removed earlier to the one removed
    later, so every out-neighborhood is the residual neighborhood at
    removal time and max outdegree <= degeneracy.
    """
    if g._orientation is None:
        order, kappa = degeneracy_order(g)
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
        arcs = [(u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges]
        dg = DirectedGraph(g.n, arcs)
        g._degeneracy = kappa
        g._orientation = dg
    return g._orientation
