"""Pattern-side machinery: small connected undirected patterns, canonical
forms and automorphism counts, longest induced cycle length, acyclic
orientation enumeration, spasm closure and its exact inclusion-exclusion
coefficients.

Everything here operates on graphs with at most MAX_PATTERN_VERTICES
vertices, so exhaustive permutation search with color-class pruning is the
canonical-labeling strategy; no external canonical-labeling dependency.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import CapExceededError, InputFormatError, IntegrityError

MAX_PATTERN_VERTICES = 10


class Pattern:
    """A small connected simple undirected pattern graph."""

    def __init__(self, n: int, edges, name: str | None = None,
                 max_vertices: int = MAX_PATTERN_VERTICES):
        if n > max_vertices:
            raise CapExceededError(
                f"pattern has {n} vertices (cap {max_vertices})")
        edge_set = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputFormatError(f"pattern self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputFormatError(f"pattern edge ({u},{v}) out of range")
            edge_set.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(edge_set))
        self.m = len(self.edges)
        self.adj = [0] * n
        for u, v in self.edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.name = name
        if n > 0 and not self._connected():
            raise InputFormatError("pattern must be connected")
        self._canon: CanonicalForm | None = None

    def _connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= self.adj[v]
                f >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def canonical(self) -> "CanonicalForm":
        if self._canon is None:
            self._canon = canonical_form(self)
        return self._canon

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"Pattern(n={self.n}, m={self.m}{tag})"


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant key: vertex count plus the minimal edge-bitset
    encoding over (color-class-respecting) relabelings.  Two patterns have
    equal keys iff they are isomorphic; automorphism_count == |Aut|."""

    n: int
    encoding: int
    automorphism_count: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.encoding)


def _refine_colors(n: int, adj, directed_in=None) -> list[int]:
    """Iterated neighborhood-multiset refinement; returns stable class ids
    ordered by an isomorphism-invariant signature."""
    if directed_in is None:
        sig = [bin(adj[v]).count("1") for v in range(n)]
    else:
        sig = [(bin(adj[v]).count("1"), bin(directed_in[v]).count("1"))
               for v in range(n)]
    order = sorted(set(sig))
    colors = [order.index(s) for s in sig]
    for _ in range(n):
        sigs = []
        for v in range(n):
            neigh = []
            m = adj[v]
            u = 0
            while m:
                if m & 1:
                    neigh.append(colors[u])
                m >>= 1
                u += 1
            if directed_in is not None:
                inn = []
                m = directed_in[v]
                u = 0
                while m:
                    if m & 1:
                        inn.append(colors[u])
                    m >>= 1
                    u += 1
                sigs.append((colors[v], tuple(sorted(neigh)), tuple(sorted(inn))))
            else:
                sigs.append((colors[v], tuple(sorted(neigh))))
        order = sorted(set(sigs))
        new = [order.index(s) for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def _min_encoding_search(n: int, colors, chunk_for, chunk_bits: int):
    """Minimal-encoding DFS over class-respecting relabelings.

    chunk_for(v, depth, assignment) encodes the adjacency of v to the
    already placed positions; the full encoding is the level sequence of
    chunks.  Candidates are tried in ascending chunk order, pruning any
    branch whose prefix exceeds the best found so far.  Returns the minimal
    encoding packed into an int and the number of permutations achieving it
    (which equals |Aut| by the stabilizer argument; automorphisms respect
    the color classes).
    """
    best_levels: list | None = None
    count = 0
    pos_class = sorted(colors)
    assignment = [-1] * n
    used = [False] * n
    current: list = []

    def dfs(depth: int, tied: bool):
        nonlocal best_levels, count
        if depth == n:
            if tied:
                count += 1
            else:
                best_levels = list(current)
                count = 1
            return
        want = pos_class[depth]
        cands = sorted(
            (chunk_for(v, depth, assignment), v)
            for v in range(n) if not used[v] and colors[v] == want)
        local_tied = tied
        for c, v in cands:
            if local_tied:
                ref = best_levels[depth]
                if c > ref:
                    break
                child_tied = c == ref
            else:
                child_tied = False
            used[v] = True
            assignment[depth] = v
            current.append(c)
            dfs(depth + 1, child_tied)
            current.pop()
            used[v] = False
            # the best assignment now runs through this node's prefix, so
            # later siblings compare against it
            local_tied = True

    dfs(0, False)
    enc = 0
    shift = 0
    for depth, c in enumerate(best_levels):
        enc |= c << shift
        shift += chunk_bits * depth
    return enc, count


def canonical_form(p: Pattern) -> CanonicalForm:
    if p.n > MAX_PATTERN_VERTICES:
        raise CapExceededError("pattern too large for canonical search")
    if p.n == 0:
        return CanonicalForm(0, 0, 1)
    colors = _refine_colors(p.n, p.adj)

    def chunk_for(v, depth, assignment):
        c = 0
        row = p.adj[v]
        for pth in range(depth):
            if row >> assignment[pth] & 1:
                c |= 1 << pth
        return c

    enc, count = _min_encoding_search(p.n, colors, chunk_for, 1)
    return CanonicalForm(p.n, enc, count)


def canonical_digraph_key(n: int, arcs) -> tuple[int, int]:
    """Canonical key for a labeled digraph on n vertices (used to group
    isomorphic orientations and to memoize per-orientation hom counts)."""
    if n == 0:
        return (0, 0)
    out = [0] * n
    inn = [0] * n
    for u, v in arcs:
        out[u] |= 1 << v
        inn[v] |= 1 << u
    colors = _refine_colors(n, out, directed_in=inn)

    def chunk_for(v, depth, assignment):
        # two bits per placed position: arc v->placed, arc placed->v
        c = 0
        for pth in range(depth):
            w = assignment[pth]
            bit = 0
            if out[v] >> w & 1:
                bit |= 1
            if out[w] >> v & 1:
                bit |= 2
            c |= bit << (2 * pth)
        return c

    enc, _ = _min_encoding_search(n, colors, chunk_for, 2)
    return (n, enc)


def licl(p: Pattern) -> int:
    """Longest induced cycle length; 0 when the pattern is a forest.

    Exhaustive over vertex subsets: a subset induces a cycle iff every
    member sees exactly two members and the subset is connected."""
    best = 0
    n = p.n
    for s in range(1, 1 << n):
        size = bin(s).count("1")
        if size < 3 or size <= best:
            continue
        ok = True
        t = s
        v = 0
        while t:
            if t & 1 and bin(p.adj[v] & s).count("1") != 2:
                ok = False
                break
            t >>= 1
            v += 1
        if not ok:
            continue
        start = (s & -s).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= p.adj[v] & s
                f >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= nxt
        if seen == s:
            best = size
    return best


def enumerate_acyclic_orientations(p: Pattern) -> list[tuple[tuple[int, int], ...]]:
    """All labeled acyclic orientations, each exactly once, as sorted arc
    tuples in a deterministic order."""
    n, m = p.n, p.m
    if m == 0:
        return [()]
    if 2 ** m <= 1_200_000:
        out = []
        for mask in range(1 << m):
            arcs = tuple(
                (u, v) if not (mask >> i & 1) else (v, u)
                for i, (u, v) in enumerate(p.edges))
            if _is_acyclic(n, arcs):
                out.append(tuple(sorted(arcs)))
        return sorted(set(out))
    if n <= 8:
        seen = set()
        for perm in permutations(range(n)):
            pos = [0] * n
            for i, v in enumerate(perm):
                pos[v] = i
            arcs = tuple(sorted(
                (u, v) if pos[u] < pos[v] else (v, u) for u, v in p.edges))
            seen.add(arcs)
        return sorted(seen)
    raise CapExceededError(
        f"orientation enumeration cap exceeded (n={n}, m={m})")


def _is_acyclic(n: int, arcs) -> bool:
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


@dataclass
class SpasmDecomposition:
    """(pattern, exact rational coefficient) pairs realizing the
    subgraph-from-homomorphisms identity."""

    source: Pattern
    entries: list[tuple[Pattern, Fraction]]

    def patterns(self) -> list[Pattern]:
        return [p for p, _ in self.entries]


def _merge_vertices(p: Pattern, u: int, v: int) -> Pattern:
    """Quotient identifying non-adjacent u and v (v folds into u),
    compacting ids and dropping duplicate edges."""
    relabel = {}
    k = 0
    for w in range(p.n):
        if w == v:
            continue
        relabel[w] = k
        k += 1
    relabel[v] = relabel[u]
    edges = {(min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
             for a, b in p.edges}
    return Pattern(p.n - 1, edges)


def spasm(h: Pattern) -> list[Pattern]:
    """Closure of h under single non-adjacent-vertex merges, deduplicated
    by canonical form; h itself included.  Sorted largest-first."""
    seen = {h.canonical().key: h}
    frontier = [h]
    while frontier:
        nxt = []
        for p in frontier:
            for u in range(p.n):
                for v in range(u + 1, p.n):
                    if p.has_edge(u, v):
                        continue
                    q = _merge_vertices(p, u, v)
                    key = q.canonical().key
                    if key not in seen:
                        seen[key] = q
                        nxt.append(q)
        frontier = nxt
    return sorted(seen.values(),
                  key=lambda q: (-q.n, -q.m, q.canonical().encoding))


def _independent_partitions(p: Pattern):
    """Partitions of V(p) with every block an independent set, as lists of
    bitmasks.  Element v either joins a compatible existing block or opens
    a new one."""
    n = p.n
    blocks: list[int] = []

    def rec(v):
        if v == n:
            yield list(blocks)
            return
        bit = 1 << v
        for i, b in enumerate(blocks):
            if not (p.adj[v] & b):
                blocks[i] = b | bit
                yield from rec(v + 1)
                blocks[i] = b
        blocks.append(bit)
        yield from rec(v + 1)
        blocks.pop()

    yield from rec(0)


def _quotient(p: Pattern, blocks: list[int]) -> Pattern:
    rep = {}
    for i, b in enumerate(blocks):
        v = 0
        m = b
        while m:
            if m & 1:
                rep[v] = i
            m >>= 1
            v += 1
    edges = {(min(rep[a], rep[b]), max(rep[a], rep[b])) for a, b in p.edges}
    return Pattern(len(blocks), edges)


_FACT = [1]
for _i in range(1, 12):
    _FACT.append(_FACT[-1] * _i)


def spasm_coefficients(h: Pattern) -> SpasmDecomposition:
    """Exact rational coefficients via Moebius inversion over the partition
    lattice restricted to independent-block partitions, divided by |Aut(h)|
    (injective homomorphism count = aut(h) * subgraph count).

    Validated downstream against brute-force Sub/Hom identities rather than
    any closed form.  Entries with coefficient zero are dropped.
    """
    aut_h = h.canonical().automorphism_count
    acc: dict[tuple[int, int], Fraction] = {}
    reps: dict[tuple[int, int], Pattern] = {}
    for blocks in _independent_partitions(h):
        mu = 1
        for b in blocks:
            sz = bin(b).count("1")
            mu *= (-1) ** (sz - 1) * _FACT[sz - 1]
        q = _quotient(h, blocks)
        key = q.canonical().key
        if key not in reps:
            reps[key] = q
            acc[key] = Fraction(0)
        acc[key] += Fraction(mu, aut_h)
    entries = [(reps[k], coeff) for k, coeff in acc.items() if coeff != 0]
    entries.sort(key=lambda e: (-e[0].n, -e[0].m, e[0].canonical().encoding))
    return SpasmDecomposition(h, entries)


def sub_from_homs(dec: SpasmDecomposition, homs) -> int:
    """Evaluate the weighted hom-count sum; the rational arithmetic must
    clear denominators exactly or the inputs are inconsistent.

    ``homs`` maps canonical keys (n, encoding) to hom counts.
    """
    total = Fraction(0)
    for p, coeff in dec.entries:
        key = p.canonical().key
        if key not in homs:
            raise IntegrityError(f"missing hom count for spasm entry {p!r}")
        total += coeff * homs[key]
    if total.denominator != 1 or total < 0:
        raise IntegrityError(f"non-integral subgraph count {total}")
    return int(total)
