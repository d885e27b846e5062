"""numba @njit kernels for the hot inner loops.

All kernels compute in int64.  Callers are responsible for quoting an
overflow bound (see backend.INT64_SAFE) and routing to the pure-Python
equivalents when it does not hold, so exactness is never lost.

Compiled artifacts are cached on disk (cache=True), so the JIT cost is
paid once per machine, not once per process.
"""

import numpy as np
from numba import njit
from numba.typed import Dict
from numba.types import int64


@njit(cache=True)
def _has_arc(indptr, indices, u, v):
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        if indices[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[u + 1] and indices[lo] == v


@njit(cache=True)
def degeneracy_order_csr(indptr, indices, n):
    """Min-degree peeling via a lazy binary heap over keys deg*n + id,
    so ties break on the smallest vertex id."""
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    heap = np.empty(n * 4 + 1, dtype=np.int64)
    size = 0
    for v in range(n):
        heap[size] = deg[v] * n + v
        size += 1
    # heapify
    for i in range(size // 2 - 1, -1, -1):
        _sift_down(heap, i, size)
    removed = np.zeros(n, dtype=np.uint8)
    order = np.empty(n, dtype=np.int64)
    cnt = 0
    kappa = 0
    while cnt < n:
        key = heap[0]
        size -= 1
        heap[0] = heap[size]
        _sift_down(heap, 0, size)
        d = key // n
        v = key % n
        if removed[v] == 1 or deg[v] != d:
            continue
        removed[v] = 1
        order[cnt] = v
        cnt += 1
        if d > kappa:
            kappa = d
        for i in range(indptr[v], indptr[v + 1]):
            u = indices[i]
            if removed[u] == 0:
                deg[u] -= 1
                if size >= heap.shape[0]:
                    heap = _grow(heap)
                heap[size] = deg[u] * n + u
                size += 1
                _sift_up(heap, size - 1)
    return order, kappa


@njit(cache=True)
def _grow(heap):
    new = np.empty(heap.shape[0] * 2, dtype=np.int64)
    new[:heap.shape[0]] = heap
    return new


@njit(cache=True)
def _sift_down(heap, i, size):
    while True:
        l = 2 * i + 1
        r = l + 1
        smallest = i
        if l < size and heap[l] < heap[smallest]:
            smallest = l
        if r < size and heap[r] < heap[smallest]:
            smallest = r
        if smallest == i:
            return
        heap[i], heap[smallest] = heap[smallest], heap[i]
        i = smallest


@njit(cache=True)
def _sift_up(heap, i):
    while i > 0:
        p = (i - 1) // 2
        if heap[p] <= heap[i]:
            return
        heap[p], heap[i] = heap[i], heap[p]
        i = p


@njit(cache=True)
def triangle_count_csr(out_indptr, out_indices):
    """Triangles of an acyclically oriented graph: one out-out wedge per
    triangle, closed by the arc between the wedge tips (either direction)."""
    n = out_indptr.shape[0] - 1
    total = 0
    for u in range(n):
        s = out_indptr[u]
        e = out_indptr[u + 1]
        for i in range(s, e):
            a = out_indices[i]
            for j in range(i + 1, e):
                b = out_indices[j]
                if _has_arc(out_indptr, out_indices, a, b) or _has_arc(
                        out_indptr, out_indices, b, a):
                    total += 1
    return total


@njit(cache=True)
def rooted_hom_tables(out_indptr, out_indices, n,
                      parent,
                      checks_src, checks_dst, checks_off,
                      child_key_pos, ckp_off, childs_off_by_time,
                      child_keys, child_vals, ctab_off,
                      out_key_pos, base):
    """Enumerate homomorphisms of a rooted out-tree-shaped sub-DAG into the
    CSR digraph, verifying non-tree arcs, multiplying in child tables keyed
    on packed image tuples, and aggregating onto the output key.

    parent[t] is the position whose image supplies candidates for position
    t via out-neighbors (parent[0] == -1: position 0 ranges over all
    vertices).  checks/children are grouped by the position at which they
    become decidable.  Packed key = sum(img[pos]*base^j).  Returns the
    accumulated (keys, values) arrays.
    """
    kb = parent.shape[0]
    img = np.empty(kb, dtype=np.int64)
    mult = np.empty(kb, dtype=np.int64)
    cand_pos = np.empty(kb, dtype=np.int64)
    cand_end = np.empty(kb, dtype=np.int64)
    table = Dict.empty(key_type=int64, value_type=int64)

    t = 0
    cand_pos[0] = 0
    cand_end[0] = n
    while t >= 0:
        if cand_pos[t] >= cand_end[t]:
            t -= 1
            continue
        if t == 0:
            v = cand_pos[0]
        else:
            v = out_indices[cand_pos[t]]
        cand_pos[t] += 1
        img[t] = v

        ok = True
        for ci in range(checks_off[t], checks_off[t + 1]):
            if not _has_arc(out_indptr, out_indices,
                            img[checks_src[ci]], img[checks_dst[ci]]):
                ok = False
                break
        if not ok:
            continue

        m = mult[t - 1] if t > 0 else 1
        for j in range(childs_off_by_time[t], childs_off_by_time[t + 1]):
            key = 0
            p = 1
            for q in range(ckp_off[j], ckp_off[j + 1]):
                key += img[child_key_pos[q]] * p
                p *= base
            lo = ctab_off[j]
            hi = ctab_off[j + 1]
            while lo < hi:
                mid = (lo + hi) // 2
                if child_keys[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < ctab_off[j + 1] and child_keys[lo] == key:
                m *= child_vals[lo]
            else:
                ok = False
                break
        if not ok:
            continue
        mult[t] = m

        if t == kb - 1:
            key = 0
            p = 1
            for q in range(out_key_pos.shape[0]):
                key += img[out_key_pos[q]] * p
                p *= base
            if key in table:
                table[key] += m
            else:
                table[key] = m
            continue

        t += 1
        par = img[parent[t]]
        cand_pos[t] = out_indptr[par]
        cand_end[t] = out_indptr[par + 1]

    nk = len(table)
    keys = np.empty(nk, dtype=np.int64)
    vals = np.empty(nk, dtype=np.int64)
    i = 0
    for k in table:
        keys[i] = k
        vals[i] = table[k]
        i += 1
    return keys, vals


@njit(cache=True)
def c3_low_mid_paths(out_indptr, out_indices, weights, is_low):
    """Layer-3 digraph: sum closing products of 2-paths u->x->v with a
    low-outdegree middle, bucketed by how many of {u,x,v} are low.

    Returns (s1, s2, s3): sums over triangles whose closing arc exists,
    where the bucket index is the number of low vertices.  Exactly-once
    corrections (s1 + s2/2 + s3/3) happen at the caller with an
    integrality assertion.
    """
    n = out_indptr.shape[0] - 1
    s1 = 0
    s2 = 0
    s3 = 0
    for u in range(n):
        for i in range(out_indptr[u], out_indptr[u + 1]):
            x = out_indices[i]
            if is_low[x] == 0:
                continue
            w_ux = weights[i]
            for j in range(out_indptr[x], out_indptr[x + 1]):
                v = out_indices[j]
                # closing arc v -> u
                lo = out_indptr[v]
                hi = out_indptr[v + 1]
                while lo < hi:
                    mid = (lo + hi) // 2
                    if out_indices[mid] < u:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < out_indptr[v + 1] and out_indices[lo] == u:
                    w = w_ux * weights[j] * weights[lo]
                    nl = 1 + is_low[u] + is_low[v]
                    if nl == 3:
                        s3 += w
                    elif nl == 2:
                        s2 += w
                    else:
                        s1 += w
    return s1, s2, s3
