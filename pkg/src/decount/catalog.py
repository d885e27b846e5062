"""Named built-in patterns and fixture graphs.

Built-in pattern names (CLI `--pattern <name>`):
  C3..C10       cycles
  P2..P10       paths (P2 = single edge)
  K3, K4, K5    cliques
  petersen      the Petersen graph
  fig8-H1..H4   the non-cycle large-induced-cycle members of the 8/9-cycle
                spasms: C6 plus a pendant edge, C7 plus a pendant edge,
                C6 and C3 sharing a vertex, C6 and C3 sharing an edge
  H1..H19       the 19 members of the 10-cycle spasm (other than the
                10-cycle itself) whose longest induced cycle exceeds 5,
                in canonical order (vertex count descending, then edge
                count, then encoding); the 8-cycle and 6-cycle appear
                among them
  fig6-obstruction  the 8-vertex pattern (4 sources / 4 intersection
                vertices under its natural orientation) that admits no
                cycle reduction for k <= 4

Fixture accessors return the small directed graphs used by tests for the
worked reduction example and the subdivision examples.
"""

from __future__ import annotations

from .errors import InputFormatError
from .graphs import DirectedGraph, UndirectedGraph
from .patterns import Pattern, licl, spasm


def cycle(k: int) -> Pattern:
    return Pattern(k, [(i, (i + 1) % k) for i in range(k)], name=f"C{k}")


def path(k: int) -> Pattern:
    return Pattern(k, [(i, i + 1) for i in range(k - 1)], name=f"P{k}")


def clique(k: int) -> Pattern:
    return Pattern(k, [(i, j) for i in range(k) for j in range(i + 1, k)],
                   name=f"K{k}")


def petersen_graph() -> UndirectedGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return UndirectedGraph(10, outer + inner + spokes)


def petersen_pattern() -> Pattern:
    g = petersen_graph()
    return Pattern(10, g.edges, name="petersen")


# --- worked-example fixtures -------------------------------------------------------

def fig3_pattern_arcs() -> tuple[int, tuple[tuple[int, int], ...]]:
    """The 3-source orientation of the 6-cycle: sources 0,1,2 point at
    intersection vertices 3 (from 0,1), 4 (from 1,2) and 5 (from 2,0)."""
    arcs = ((0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5))
    return 6, arcs


def fig3_graph() -> DirectedGraph:
    """Worked-example host digraph on vertices a,b,c,d = 0,1,2,3.

    a has indegree 0 (so it never hosts an intersection image), c has
    exactly two in-neighbors (giving a weight-2 edge between c's copies in
    consecutive layers), and no out-out wedge has endpoints {b, d}.
    """
    return DirectedGraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def fig7_graph() -> UndirectedGraph:
    """Disjoint 3-, 4- and 5-cycles; its even expansion has exactly one
    6-cycle, one 8-cycle and one 10-cycle."""
    edges = [(0, 1), (1, 2), (2, 0)]
    edges += [(3, 4), (4, 5), (5, 6), (6, 3)]
    edges += [(7, 8), (8, 9), (9, 10), (10, 11), (11, 7)]
    return UndirectedGraph(12, edges)


def fig8_graph() -> UndirectedGraph:
    """Disjoint 3- and 4-cycle; its odd expansion has three 7-cycles and
    five 9-cycles."""
    edges = [(0, 1), (1, 2), (2, 0)]
    edges += [(3, 4), (4, 5), (5, 6), (6, 3)]
    return UndirectedGraph(7, edges)


def fig6_pattern() -> Pattern:
    """8-vertex pattern that is not cycle-reducible for k <= 4.

    Vertices 0..3 are the sources of the natural orientation (arcs point
    4..7-ward); it arises from the 12-cycle by identifying the two vertex
    pairs six apart on even positions and two pairs on odd positions.
    Reach sets: 0 -> {4,6,7}, 1 -> {4,5}, 2 -> {5,6}, 3 -> {5,7}.
    """
    return Pattern(8, fig6_orientation_arcs(), name="fig6-obstruction")


def fig6_orientation_arcs() -> tuple[tuple[int, int], ...]:
    return ((0, 4), (1, 4), (1, 5), (2, 5), (3, 5),
            (0, 6), (2, 6), (0, 7), (3, 7))


def _fig8_h_patterns() -> dict[str, Pattern]:
    # C6 plus pendant edge (7 vertices)
    h1 = Pattern(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)],
                 name="fig8-H1")
    # C7 plus pendant edge (8 vertices)
    h2 = Pattern(8, [(i, (i + 1) % 7) for i in range(7)] + [(0, 7)],
                 name="fig8-H2")
    # C6 and C3 sharing one vertex (8 vertices)
    h3 = Pattern(8, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (6, 7), (7, 0)],
                 name="fig8-H3")
    # C6 and C3 sharing one edge (7 vertices)
    h4 = Pattern(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (6, 1)],
                 name="fig8-H4")
    return {"fig8-H1": h1, "fig8-H2": h2, "fig8-H3": h3, "fig8-H4": h4}


_C10_SPASM_NAMED: dict[str, Pattern] | None = None


def c10_spasm_noncycle_patterns() -> dict[str, Pattern]:
    """H1..H19: members of the 10-cycle spasm with longest induced cycle
    above 5, excluding the 10-cycle itself, numbered in canonical order."""
    global _C10_SPASM_NAMED
    if _C10_SPASM_NAMED is None:
        c10_key = cycle(10).canonical().key
        members = [p for p in spasm(cycle(10))
                   if licl(p) > 5 and p.canonical().key != c10_key]
        members.sort(key=lambda p: (-p.n, -p.m, p.canonical().encoding))
        assert len(members) == 19
        _C10_SPASM_NAMED = {f"H{i + 1}": p for i, p in enumerate(members)}
    return _C10_SPASM_NAMED


def builtin_pattern(name: str) -> Pattern:
    """Resolve a built-in pattern name; raises InputFormatError when the
    name is unknown."""
    key = name.strip()
    low = key.lower()
    if len(low) >= 2 and low[0] == "c" and low[1:].isdigit():
        k = int(low[1:])
        if 3 <= k <= 10:
            return cycle(k)
    if len(low) >= 2 and low[0] == "p" and low[1:].isdigit():
        k = int(low[1:])
        if 2 <= k <= 10:
            return path(k)
    if len(low) >= 2 and low[0] == "k" and low[1:].isdigit():
        k = int(low[1:])
        if 2 <= k <= 5:
            return clique(k)
    if low == "petersen":
        return petersen_pattern()
    if low == "fig6-obstruction":
        return fig6_pattern()
    fig8 = _fig8_h_patterns()
    if key in fig8:
        return fig8[key]
    if low in {n.lower(): n for n in fig8}:
        return fig8[{n.lower(): n for n in fig8}[low]]
    named = c10_spasm_noncycle_patterns()
    if key.upper() in named:
        return named[key.upper()]
    raise InputFormatError(f"unknown pattern name {name!r}")


def builtin_pattern_names() -> list[str]:
    names = [f"C{k}" for k in range(3, 11)]
    names += [f"P{k}" for k in range(2, 11)]
    names += ["K3", "K4", "K5", "petersen", "fig6-obstruction"]
    names += ["fig8-H1", "fig8-H2", "fig8-H3", "fig8-H4"]
    names += [f"H{i}" for i in range(1, 20)]
    return names
