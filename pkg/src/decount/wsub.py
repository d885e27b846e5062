"""Weighted colorful cycle sums on layered weighted graphs.

Every engine first directs the edges from layer i to layer i+1 (mod k); a
directed k-cycle in that view advances one layer per arc, so it is
automatically colorful.  The thresholded engines split vertices into
out-degree classes and handle each shape of class sequence around the
cycle by exactly one case; division corrections are exact integer
divisions with remainder assertions, which catch any case overlap
immediately.

Thresholds default to the cubic-matrix-multiplication exponents and stay
fully parameterizable; correctness is threshold-independent and every
engine is tested against wsub_bruteforce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from . import _kernels_py
from .errors import IntegrityError
from .graphs import UndirectedGraph, orient_by_degeneracy
from .matrixops import mat_power, mat_trace, matmul_exact
from .reducer import LayeredWeightedGraph


@dataclass
class ThresholdConfig:
    """Degree threshold for the matrix-product engines; None picks the
    engine's default power of the edge count."""

    delta: int | None = None


def _exact_div(value: int, divisor: int, case: str) -> int:
    q, r = divmod(value, divisor)
    if r:
        raise IntegrityError(f"non-integral correction in {case}: {value}/{divisor}")
    return q


class _LayerView:
    """Flattened directed view: global vertex ids, arcs layer i -> i+1."""

    def __init__(self, lg: LayeredWeightedGraph):
        self.k = lg.k
        sizes = lg.layer_sizes()
        self.offsets = [0] * lg.k
        acc = 0
        for i in range(lg.k):
            self.offsets[i] = acc
            acc += sizes[i]
        self.n = acc
        self.layer = [0] * acc
        for i in range(lg.k):
            for j in range(sizes[i]):
                self.layer[self.offsets[i] + j] = i
        arcs = []
        for i in range(lg.k):
            src_off = self.offsets[i]
            dst_off = self.offsets[(i + 1) % lg.k]
            for (u, v), w in lg.edges[i].items():
                arcs.append((src_off + u, dst_off + v, w))
        arcs.sort()
        self.m = len(arcs)
        self.out_indptr = np.zeros(self.n + 1, dtype=np.int64)
        self.out_indices = np.zeros(self.m, dtype=np.int64)
        self.weights = [0] * self.m
        deg = [0] * self.n
        for u, v, w in arcs:
            deg[u] += 1
        acc = 0
        for v in range(self.n):
            self.out_indptr[v] = acc
            acc += deg[v]
        self.out_indptr[self.n] = acc
        fill = [int(self.out_indptr[v]) for v in range(self.n)]
        for u, v, w in arcs:
            self.out_indices[fill[u]] = v
            self.weights[fill[u]] = w
            fill[u] += 1
        self.outdeg = deg
        # in-adjacency: (u, weight) lists per target
        self.in_adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in arcs:
            self.in_adj[v].append((u, w))

    def out_arcs(self, v: int):
        s, e = int(self.out_indptr[v]), int(self.out_indptr[v + 1])
        for i in range(s, e):
            yield int(self.out_indices[i]), self.weights[i]

    def layer_pair_weight_sums(self) -> list[int]:
        sums = [0] * self.k
        for u in range(self.n):
            s, e = int(self.out_indptr[u]), int(self.out_indptr[u + 1])
            for i in range(s, e):
                sums[self.layer[u]] += self.weights[i]
        return sums


def wsub_bruteforce(lg: LayeredWeightedGraph, k: int | None = None) -> int:
    """Reference engine: enumerate colorful cycles layer by layer and sum
    the weight products.  Exact; used as the oracle for everything else."""
    if k is not None and k != lg.k:
        raise ValueError(f"layer count {lg.k} does not match k={k}")
    k = lg.k
    if k < 3:
        raise ValueError("cycles need at least 3 layers")
    adj = []
    for i in range(k):
        layer_adj: dict[int, list[tuple[int, int]]] = {}
        for (u, v), w in lg.edges[i].items():
            layer_adj.setdefault(u, []).append((v, w))
        adj.append(layer_adj)
    closing = lg.edges[k - 1]
    total = 0

    def rec(layer: int, v: int, prod: int, start: int):
        nonlocal total
        if layer == k - 1:
            w = closing.get((v, start))
            if w is not None:
                total += prod * w
            return
        for nxt, w in adj[layer].get(v, ()):
            rec(layer + 1, nxt, prod * w, start)

    for start in range(len(lg.layer_keys[0])):
        rec(0, start, 1, start)
    return total


def _class_matrix(view: _LayerView, rows: list[int], cols: list[int]):
    """Arc-weight matrix restricted to the given vertex classes."""
    ridx = {v: i for i, v in enumerate(rows)}
    cidx = {v: i for i, v in enumerate(cols)}
    M = [[0] * len(cols) for _ in range(len(rows))]
    for u in rows:
        for v, w in view.out_arcs(u):
            j = cidx.get(v)
            if j is not None:
                M[ridx[u]][j] = w
    return M, ridx, cidx


def wsub_c3_mm(lg: LayeredWeightedGraph, cfg: ThresholdConfig | None = None) -> int:
    """Triangle engine: high-degree trace plus low-middle path closure."""
    if lg.k != 3:
        raise ValueError("wsub_c3_mm needs exactly 3 layers")
    view = _LayerView(lg)
    if view.m == 0:
        return 0
    delta = cfg.delta if cfg and cfg.delta is not None else max(1, round(view.m ** 0.5))
    is_low = [1 if view.outdeg[v] < delta else 0 for v in range(view.n)]

    high = [v for v in range(view.n) if not is_low[v]]
    A_H, _, _ = _class_matrix(view, high, high)
    total = _exact_div(mat_trace(mat_power(A_H, 3)), 3, "c3 case 1") if high else 0

    sums = view.layer_pair_weight_sums()
    bound = 3 * sums[0] * sums[1] * sums[2] + 1
    kern = backend.numba_kernels()
    if kern is not None and bound < backend.INT64_SAFE:
        s1, s2, s3 = kern.c3_low_mid_paths(
            view.out_indptr, view.out_indices,
            np.array(view.weights, dtype=np.int64),
            np.array(is_low, dtype=np.int64))
        s1, s2, s3 = int(s1), int(s2), int(s3)
    else:
        s1, s2, s3 = _kernels_py.c3_low_mid_paths(
            view.out_indptr, view.out_indices, view.weights, is_low)
    total += s1 + _exact_div(s2, 2, "c3 case 2") + _exact_div(s3, 3, "c3 case 2")
    return total


def wsub_c4_mm(lg: LayeredWeightedGraph, cfg: ThresholdConfig | None = None) -> int:
    """4-cycle engine with High/Medium/Low outdegree classes.

    Case split over the class shape around the cycle: all-high (trace);
    an opposite pair outside H (path-pair dictionary); exactly three high;
    a consecutive high pair plus a medium (rectangular products); a
    consecutive high pair plus two lows (3-path closure).
    """
    if lg.k != 4:
        raise ValueError("wsub_c4_mm needs exactly 4 layers")
    view = _LayerView(lg)
    if view.m == 0:
        return 0
    delta = (cfg.delta if cfg and cfg.delta is not None
             else max(1, round(view.m ** (4.0 / 7.0))))
    CH, CM, CL = 2, 1, 0
    cls = [0] * view.n
    for v in range(view.n):
        d = view.outdeg[v]
        if d >= delta:
            cls[v] = CH
        elif d * d < delta:
            cls[v] = CL
        else:
            cls[v] = CM

    high = [v for v in range(view.n) if cls[v] == CH]
    A_H, h_ridx, _ = _class_matrix(view, high, high)

    # case 1: all four vertices high
    total = _exact_div(mat_trace(mat_power(A_H, 4)), 4, "c4 case 1") if high else 0

    # val: 2-paths through a middle outside H
    val: dict[tuple[int, int], int] = {}
    for x in range(view.n):
        if cls[x] == CH:
            continue
        for u, w_in in view.in_adj[x]:
            for v, w_out in view.out_arcs(x):
                key = (u, v)
                val[key] = val.get(key, 0) + w_in * w_out

    # case 2: an opposite pair both outside H
    s2 = s4 = 0
    for (u, v), a in val.items():
        b = val.get((v, u))
        if b is None:
            continue
        prod = a * b
        if cls[u] != CH and cls[v] != CH:
            s4 += prod
        else:
            s2 += prod
    total += _exact_div(s4, 4, "c4 case 2") + _exact_div(s2, 2, "c4 case 2")

    # case 3: exactly three high (val path endpoints both high)
    if high:
        A_H2 = mat_power(A_H, 2)
        for (u, v), a in val.items():
            if cls[u] == CH and cls[v] == CH:
                total += a * A_H2[h_ridx[v]][h_ridx[u]]

    # case 4: consecutive high pair and a medium on the non-high side
    med = [v for v in range(view.n) if cls[v] == CM]
    if high and med:
        A_MH, m_ridx, _ = _class_matrix(view, med, high)
        A_HM, _, m_cidx = _class_matrix(view, high, med)
        A_MHH = matmul_exact(A_MH, A_H)   # M -> H -> H
        A_HHM = matmul_exact(A_H, A_HM)   # H -> H -> M
        for x in range(view.n):
            if cls[x] != CL:
                continue
            # H -> L -> M closed by M -> H -> H
            for u, w_in in view.in_adj[x]:
                if cls[u] != CH:
                    continue
                for v, w_out in view.out_arcs(x):
                    if cls[v] == CM:
                        total += w_in * w_out * A_MHH[m_ridx[v]][h_ridx[u]]
        for x in range(view.n):
            # M -> L -> H and M -> M -> H closed by H -> H -> M
            if cls[x] == CH:
                continue
            for u, w_in in view.in_adj[x]:
                if cls[u] != CM:
                    continue
                for v, w_out in view.out_arcs(x):
                    if cls[v] == CH:
                        total += w_in * w_out * A_HHM[h_ridx[v]][m_cidx[u]]

    # case 5: consecutive high pair and two lows
    if high:
        for a in range(view.n):
            if cls[a] != CL:
                continue
            for u, w1 in view.in_adj[a]:
                if cls[u] != CH:
                    continue
                for b, w2 in view.out_arcs(a):
                    if cls[b] != CL:
                        continue
                    for v, w3 in view.out_arcs(b):
                        if cls[v] != CH:
                            continue
                        total += w1 * w2 * w3 * A_H[h_ridx[v]][h_ridx[u]]
    return total


def wsub_c5_mm(lg: LayeredWeightedGraph, cfg: ThresholdConfig | None = None) -> int:
    """5-cycle engine with two thresholds (High/Medium vs Low).

    Cases by the low-vertex arrangement around the cycle: none; one; two
    consecutive; two separated (trace of HLH * HM * HLH); three or more
    with the path-pair dictionary; three consecutive (split by the classes
    of the adjacent high/medium pair).
    """
    if lg.k != 5:
        raise ValueError("wsub_c5_mm needs exactly 5 layers")
    view = _LayerView(lg)
    if view.m == 0:
        return 0
    delta = (cfg.delta if cfg and cfg.delta is not None
             else max(1, round(view.m ** 0.4)))
    CH, CM, CL = 2, 1, 0
    cls = [0] * view.n
    for v in range(view.n):
        d = view.outdeg[v]
        if d >= delta * delta:
            cls[v] = CH
        elif d < delta:
            cls[v] = CL
        else:
            cls[v] = CM

    def is_hm(v):
        return cls[v] != CL

    hm = [v for v in range(view.n) if is_hm(v)]
    A_HM, hm_ridx, _ = _class_matrix(view, hm, hm)

    # case 1: no low vertex
    total = _exact_div(mat_trace(mat_power(A_HM, 5)), 5, "c5 case 1") if hm else 0

    if hm:
        A3 = mat_power(A_HM, 3)
        A2 = mat_power(A_HM, 2)
        # case 2: exactly one low
        for x in range(view.n):
            if cls[x] != CL:
                continue
            for u, w_in in view.in_adj[x]:
                if not is_hm(u):
                    continue
                for v, w_out in view.out_arcs(x):
                    if is_hm(v):
                        total += w_in * w_out * A3[hm_ridx[v]][hm_ridx[u]]
        # case 3: two consecutive lows
        for a in range(view.n):
            if cls[a] != CL:
                continue
            for u, w1 in view.in_adj[a]:
                if not is_hm(u):
                    continue
                for b, w2 in view.out_arcs(a):
                    if cls[b] != CL:
                        continue
                    for v, w3 in view.out_arcs(b):
                        if is_hm(v):
                            total += w1 * w2 * w3 * A2[hm_ridx[v]][hm_ridx[u]]
        # case 6: two separated lows
        A_HLH = [[0] * len(hm) for _ in range(len(hm))]
        for x in range(view.n):
            if cls[x] != CL:
                continue
            for u, w_in in view.in_adj[x]:
                if not is_hm(u):
                    continue
                iu = hm_ridx[u]
                for v, w_out in view.out_arcs(x):
                    if is_hm(v):
                        A_HLH[iu][hm_ridx[v]] += w_in * w_out
        total += mat_trace(matmul_exact(matmul_exact(A_HLH, A_HM), A_HLH))

    # case 4: >= 3 lows, not all consecutive -- path-pair dictionary
    val: dict[tuple[int, int], int] = {}
    for x in range(view.n):
        if cls[x] != CL:
            continue
        for u, w_in in view.in_adj[x]:
            for v, w_out in view.out_arcs(x):
                key = (u, v)
                val[key] = val.get(key, 0) + w_in * w_out
    s1 = s2 = s5 = 0
    for a in range(view.n):
        if cls[a] != CL:
            continue
        for u, w1 in view.in_adj[a]:
            for b, w2 in view.out_arcs(a):
                if cls[b] != CL:
                    continue
                for v, w3 in view.out_arcs(b):
                    p = val.get((v, u))
                    if p is None:
                        continue
                    w = w1 * w2 * w3 * p
                    nl = (0 if is_hm(u) else 1) + (0 if is_hm(v) else 1)
                    if nl == 0:
                        s1 += w
                    elif nl == 2:
                        s5 += w
                    else:
                        s2 += w
    total += s1 + _exact_div(s2, 2, "c5 case 4") + _exact_div(s5, 5, "c5 case 4")

    # case 5: three consecutive lows next to a high/medium pair
    highs = [v for v in range(view.n) if cls[v] == CH]
    lows = [v for v in range(view.n) if cls[v] == CL]
    if highs:
        A_Honly, honly_ridx, _ = _class_matrix(view, highs, highs)
        A_HL, _, l_cidx = _class_matrix(view, highs, lows)
        A_HHL = matmul_exact(A_Honly, A_HL)  # H -> H -> L
    # 5a: pair (H, H): 3-paths L->L->L->H closed by H -> H -> L
    # 5b: pair (M, .): dictionary of L -> M -> H/M paths against H/M -> L -> L -> L
    # 5c: pair (H, M): dictionary of H -> M -> L paths against L -> L -> L -> H
    val_b: dict[tuple[int, int], int] = {}
    val_c: dict[tuple[int, int], int] = {}
    for y in range(view.n):
        if cls[y] != CM:
            continue
        for x, w_in in view.in_adj[y]:
            for z, w_out in view.out_arcs(y):
                if cls[x] == CL and is_hm(z):
                    key = (x, z)
                    val_b[key] = val_b.get(key, 0) + w_in * w_out
                if cls[x] == CH and cls[z] == CL:
                    key = (x, z)
                    val_c[key] = val_c.get(key, 0) + w_in * w_out

    # 5a: 3-paths a->b->c->d with a,b,c low, d high
    if highs:
        for a in lows:
            for b, w1 in view.out_arcs(a):
                if cls[b] != CL:
                    continue
                for c, w2 in view.out_arcs(b):
                    if cls[c] != CL:
                        continue
                    for d, w3 in view.out_arcs(c):
                        if cls[d] == CH:
                            total += w1 * w2 * w3 * A_HHL[honly_ridx[d]][l_cidx[a]]
    # 5b: 3-paths d->a->b->c with d in H/M and a,b,c low, closed by val_b[(c, d)]
    for d in hm:
        for a, w1 in view.out_arcs(d):
            if cls[a] != CL:
                continue
            for b, w2 in view.out_arcs(a):
                if cls[b] != CL:
                    continue
                for c, w3 in view.out_arcs(b):
                    if cls[c] != CL:
                        continue
                    p = val_b.get((c, d))
                    if p is not None:
                        total += w1 * w2 * w3 * p
    # 5c: 3-paths a->b->c->d with a,b,c low, d high, closed by val_c[(d, a)]
    for a in lows:
        for b, w1 in view.out_arcs(a):
            if cls[b] != CL:
                continue
            for c, w2 in view.out_arcs(b):
                if cls[c] != CL:
                    continue
                for d, w3 in view.out_arcs(c):
                    if cls[d] != CH:
                        continue
                    p = val_c.get((d, a))
                    if p is not None:
                        total += w1 * w2 * w3 * p
    return total


def wsub_combinatorial(lg: LayeredWeightedGraph, k: int) -> int:
    """Degeneracy-oriented combinatorial engines for k in {3, 4}.

    k=3: out-out wedges closed by the third edge.  k=4: out-out wedges and
    directed 2-paths tabulated by endpoints and middle color, paired across
    opposite middle colors; the pairing respects the orientation shapes a
    4-cycle can take, so each colorful cycle is counted exactly once.
    """
    if k not in (3, 4):
        raise ValueError("combinatorial engine supports k in {3, 4}")
    if lg.k != k:
        raise ValueError(f"layer count {lg.k} does not match k={k}")
    view = _LayerView(lg)
    if view.m == 0:
        return 0
    und_edges = []
    weight: dict[tuple[int, int], int] = {}
    for u in range(view.n):
        for v, w in view.out_arcs(u):
            e = (u, v) if u < v else (v, u)
            und_edges.append(e)
            weight[e] = w
    und = UndirectedGraph(view.n, und_edges)
    dg = orient_by_degeneracy(und)

    def wt(a, b):
        return weight[(a, b) if a < b else (b, a)]

    if k == 3:
        total = 0
        for u in range(view.n):
            nbrs = [int(x) for x in dg.out_neighbors(u)]
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    a, b = nbrs[i], nbrs[j]
                    e = (a, b) if a < b else (b, a)
                    if e in weight:
                        total += wt(u, a) * wt(u, b) * weight[e]
        return total

    # k == 4; wedges with both tips in the same layer close into
    # non-colorful 4-cycles, so only opposite-color tip pairs are kept
    oo: dict[tuple[int, int, int], int] = {}
    po: dict[tuple[int, int, int], int] = {}
    for x in range(view.n):
        cx = view.layer[x]
        outs = [int(t) for t in dg.out_neighbors(x)]
        for i in range(len(outs)):
            for j in range(i + 1, len(outs)):
                a, b = outs[i], outs[j]
                if view.layer[a] == view.layer[b]:
                    continue
                if a > b:
                    a, b = b, a
                key = (a, b, cx)
                oo[key] = oo.get(key, 0) + wt(x, a) * wt(x, b)
        for a in [int(t) for t in dg.in_neighbors(x)]:
            for b in outs:
                if view.layer[a] == view.layer[b]:
                    continue
                key = (a, b, cx)
                po[key] = po.get(key, 0) + wt(a, x) * wt(x, b)

    total = 0
    pairs = set()
    for (a, b, cx) in oo:
        pairs.add((a, b))
    for (a, b, cx) in po:
        pairs.add((min(a, b), max(a, b)))
    for (u, v) in pairs:
        cu = view.layer[u]
        m1 = (cu + 1) % 4
        m2 = (cu + 3) % 4
        oo1 = oo.get((u, v, m1), 0)
        oo2 = oo.get((u, v, m2), 0)
        po1_uv = po.get((u, v, m1), 0)
        po1_vu = po.get((v, u, m1), 0)
        po2_uv = po.get((u, v, m2), 0)
        po2_vu = po.get((v, u, m2), 0)
        total += oo1 * oo2
        total += oo1 * (po2_uv + po2_vu) + oo2 * (po1_uv + po1_vu)
        total += po1_uv * po2_uv + po1_vu * po2_vu
    return total


def default_engine(k: int):
    """Engine used by the counting pipeline for WSub(., C_k)."""
    if k == 3:
        return wsub_c3_mm
    if k == 4:
        return wsub_c4_mm
    if k == 5:
        return wsub_c5_mm
    raise ValueError(f"no weighted cycle engine for k={k}")
