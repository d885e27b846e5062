"""Pure-Python fallbacks for the numba kernels.

Same semantics as _kernels_numba, but weights/counts are plain Python
integers, so these paths are exact for arbitrary magnitudes.  Selected
via DECOUNT_BACKEND=python, when numba is unavailable, or whenever a
call site's int64 overflow bound fails.
"""

from __future__ import annotations

from bisect import bisect_left


def triangle_count_csr(out_indptr, out_indices):
    n = len(out_indptr) - 1
    total = 0
    for u in range(n):
        row = out_indices[out_indptr[u]:out_indptr[u + 1]]
        for i in range(len(row)):
            a = int(row[i])
            arow = out_indices[out_indptr[a]:out_indptr[a + 1]]
            for j in range(i + 1, len(row)):
                b = int(row[j])
                k = bisect_left(arow, b)
                if k < len(arow) and arow[k] == b:
                    total += 1
                    continue
                brow = out_indices[out_indptr[b]:out_indptr[b + 1]]
                k = bisect_left(brow, a)
                if k < len(brow) and brow[k] == a:
                    total += 1
    return total


def c3_low_mid_paths(out_indptr, out_indices, weights, is_low):
    """weights may be a list of arbitrary-size Python ints."""
    n = len(out_indptr) - 1
    s1 = s2 = s3 = 0
    for u in range(n):
        for i in range(out_indptr[u], out_indptr[u + 1]):
            x = int(out_indices[i])
            if not is_low[x]:
                continue
            w_ux = weights[i]
            for j in range(out_indptr[x], out_indptr[x + 1]):
                v = int(out_indices[j])
                row = out_indices[out_indptr[v]:out_indptr[v + 1]]
                k = bisect_left(row, u)
                if k < len(row) and row[k] == u:
                    w = w_ux * weights[j] * weights[out_indptr[v] + k]
                    nl = 1 + is_low[u] + is_low[v]
                    if nl == 3:
                        s3 += w
                    elif nl == 2:
                        s2 += w
                    else:
                        s1 += w
    return s1, s2, s3
