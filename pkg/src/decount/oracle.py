"""Brute-force reference counters.

These prioritize obvious correctness over speed (plain backtracking, no
pruning beyond edge constraints) and serve as ground truth for every other
counting path in the package.  Do not use beyond n ~ 14.
"""

from __future__ import annotations

from .errors import IntegrityError
from .graphs import DirectedGraph, UndirectedGraph
from .patterns import Pattern


def _adj_sets(g: UndirectedGraph) -> list[set[int]]:
    return [set(map(int, g.neighbors(v))) for v in range(g.n)]


def _bfs_order(n: int, adj_masks) -> list[int]:
    seen = [False] * n
    order = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            m = adj_masks[v]
            u = 0
            while m:
                if m & 1 and not seen[u]:
                    seen[u] = True
                    queue.append(u)
                m >>= 1
                u += 1
    return order


def hom_bruteforce(g: UndirectedGraph, h: Pattern) -> int:
    """Number of edge-preserving maps V(h) -> V(g)."""
    if h.n == 0:
        return 1
    adj = _adj_sets(g)
    order = _bfs_order(h.n, h.adj)
    pos_of = {v: i for i, v in enumerate(order)}
    # for each position, h-neighbors already placed
    placed_nbrs = []
    for i, v in enumerate(order):
        placed_nbrs.append([pos_of[u] for u in range(h.n)
                            if h.has_edge(u, v) and pos_of[u] < i])
    img = [0] * h.n
    all_vertices = set(range(g.n))

    def rec(i: int) -> int:
        if i == h.n:
            return 1
        cands = all_vertices
        for p in placed_nbrs[i]:
            cands = cands & adj[img[p]] if cands is not all_vertices else set(adj[img[p]])
        total = 0
        for c in cands:
            img[i] = c
            total += rec(i + 1)
        return total

    return rec(0)


def injective_hom_bruteforce(g: UndirectedGraph, h: Pattern) -> int:
    if h.n == 0:
        return 1
    adj = _adj_sets(g)
    order = _bfs_order(h.n, h.adj)
    pos_of = {v: i for i, v in enumerate(order)}
    placed_nbrs = []
    for i, v in enumerate(order):
        placed_nbrs.append([pos_of[u] for u in range(h.n)
                            if h.has_edge(u, v) and pos_of[u] < i])
    img = [0] * h.n
    used: set[int] = set()

    def rec(i: int) -> int:
        if i == h.n:
            return 1
        if placed_nbrs[i]:
            cands = set(adj[img[placed_nbrs[i][0]]])
            for p in placed_nbrs[i][1:]:
                cands &= adj[img[p]]
        else:
            cands = set(range(g.n))
        total = 0
        for c in cands - used:
            img[i] = c
            used.add(c)
            total += rec(i + 1)
            used.discard(c)
        return total

    return rec(0)


def sub_bruteforce(g: UndirectedGraph, h: Pattern) -> int:
    """Subgraph count: injective homomorphisms divided by |Aut(h)|."""
    inj = injective_hom_bruteforce(g, h)
    aut = h.canonical().automorphism_count
    if inj % aut:
        raise IntegrityError(f"injective hom count {inj} not divisible by aut {aut}")
    return inj // aut


def hom_bruteforce_directed(g: DirectedGraph, n_pat: int, arcs) -> int:
    """Number of arc-preserving maps from the DAG pattern (n_pat, arcs)
    into the digraph g."""
    if n_pat == 0:
        return 1
    und = [0] * n_pat
    out_nbr = [[] for _ in range(n_pat)]
    in_nbr = [[] for _ in range(n_pat)]
    for u, v in arcs:
        und[u] |= 1 << v
        und[v] |= 1 << u
        out_nbr[u].append(v)
        in_nbr[v].append(u)
    order = _bfs_order(n_pat, und)
    pos_of = {v: i for i, v in enumerate(order)}
    out_sets = [set(map(int, g.out_neighbors(v))) for v in range(g.n)]
    in_sets = [set(map(int, g.in_neighbors(v))) for v in range(g.n)]

    # per position: candidate-defining placed arcs and arcs to verify
    cand_from = []
    verify = []
    for i, v in enumerate(order):
        gens = []
        for u in in_nbr[v]:
            if pos_of[u] < i:
                gens.append((pos_of[u], True))   # arc u->v: v in out(img(u))
        for u in out_nbr[v]:
            if pos_of[u] < i:
                gens.append((pos_of[u], False))  # arc v->u: v in in(img(u))
        cand_from.append(gens)
        verify.append(gens)
    img = [0] * n_pat

    def rec(i: int) -> int:
        if i == n_pat:
            return 1
        gens = cand_from[i]
        if gens:
            p, is_out = gens[0]
            cands = out_sets[img[p]] if is_out else in_sets[img[p]]
            cands = set(cands)
            for p, is_out in gens[1:]:
                cands &= out_sets[img[p]] if is_out else in_sets[img[p]]
        else:
            cands = set(range(g.n))
        total = 0
        for c in cands:
            img[i] = c
            total += rec(i + 1)
        return total

    return rec(0)


def cycle_bruteforce(g: UndirectedGraph, k: int) -> int:
    """Simple k-cycles, each counted once: canonical smallest start vertex
    and second-vertex < last-vertex direction tie-break."""
    if k < 3:
        raise ValueError("cycles have length >= 3")
    adj = _adj_sets(g)
    count = 0
    path = [0] * k
    on_path = [False] * g.n

    def rec(depth: int, start: int) -> int:
        total = 0
        v = path[depth - 1]
        if depth == k:
            if start in adj[v] and path[1] < path[k - 1]:
                return 1
            return 0
        for w in adj[v]:
            if w > start and not on_path[w]:
                path[depth] = w
                on_path[w] = True
                total += rec(depth + 1, start)
                on_path[w] = False
        return total

    for s in range(g.n):
        path[0] = s
        on_path[s] = True
        count += rec(1, s)
        on_path[s] = False
    return count
