"""Edge-subdivision constructions and their count-recovery identities.

The even expansion subdivides every edge into a 2-edge path; a k-cycle
becomes a 2k-cycle and nothing else does, so counts transfer one to one.
The odd expansion replaces every edge by a 2-path and a 3-path in
parallel; 7-cycles of the result count triangles three times each, and
9-cycles mix triangles and 4-cycles as recovered below.  Both expansions
have degeneracy exactly 2 once the input has an edge.
"""

from __future__ import annotations

from .errors import IntegrityError
from .graphs import UndirectedGraph


def expand_even(g: UndirectedGraph) -> UndirectedGraph:
    """Subdivide every edge by one fresh vertex (ids appended after the
    original ids in sorted edge order): n+m vertices, 2m edges."""
    edges = []
    for i, (u, v) in enumerate(g.edges):
        mid = g.n + i
        edges.append((u, mid))
        edges.append((mid, v))
    return UndirectedGraph(g.n + g.m, edges)


def expand_odd(g: UndirectedGraph) -> UndirectedGraph:
    """Replace every edge by a 2-path and a 3-path in parallel (three fresh
    vertices per edge, appended in sorted edge order): 3m+n vertices,
    5m edges."""
    edges = []
    for i, (u, v) in enumerate(g.edges):
        a = g.n + 3 * i       # 2-path middle
        b = g.n + 3 * i + 1   # 3-path first middle
        c = g.n + 3 * i + 2   # 3-path second middle
        edges += [(u, a), (a, v), (u, b), (b, c), (c, v)]
    return UndirectedGraph(g.n + 3 * g.m, edges)


def recover_from_even(count_2k: int, k: int) -> int:
    """k-cycle count of g from the 2k-cycle count of expand_even(g); the
    correspondence is one to one, so this is the identity, named so the
    pipeline can route C_k counting through the expansion."""
    if k < 3:
        raise ValueError("cycles have length >= 3")
    return count_2k


def recover_from_odd(c7: int, c9: int, c3_of_g: int | None = None) -> tuple[int, int]:
    """Recover (triangle count, 4-cycle count) of g from the 7- and 9-cycle
    counts of expand_odd(g).

    c7 = 3 * c3 and c9 = c3 + 4 * c4.  When an independently computed
    triangle count is supplied it must agree with c7 / 3.
    """
    c3, r = divmod(c7, 3)
    if r:
        raise IntegrityError(f"7-cycle count {c7} not divisible by 3")
    if c3_of_g is not None and c3_of_g != c3:
        raise IntegrityError(
            f"independent triangle count {c3_of_g} disagrees with c7/3 = {c3}")
    c4, r = divmod(c9 - c3, 4)
    if r:
        raise IntegrityError(f"9-cycle count {c9} minus triangles {c3} "
                             "not divisible by 4")
    return c3, c4
