"""Exact dense integer matrix products.

Entries are Python ints (arbitrary precision).  When an a-priori bound
shows the product fits in int64, the multiply runs through numpy; the
fallback is a blocked pure-Python triple loop, so results are exact for
any magnitude.  No floating point anywhere.
"""

from __future__ import annotations

import numpy as np

_INT64_CAP = (1 << 62)
_BLOCK = 48


def matmul_exact(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    n = len(A)
    if n == 0:
        return []
    kdim = len(B)
    m = len(B[0]) if kdim else 0
    if kdim == 0 or m == 0:
        return [[0] * m for _ in range(n)]
    max_a = max((abs(x) for row in A for x in row), default=0)
    max_b = max((abs(x) for row in B for x in row), default=0)
    if max_a * max_b * kdim < _INT64_CAP:
        C = np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)
        return C.tolist()
    return _matmul_blocked(A, B, n, kdim, m)


def _matmul_blocked(A, B, n, kdim, m):
    C = [[0] * m for _ in range(n)]
    for k0 in range(0, kdim, _BLOCK):
        k1 = min(k0 + _BLOCK, kdim)
        for i in range(n):
            Ai = A[i]
            Ci = C[i]
            for k in range(k0, k1):
                a = Ai[k]
                if a:
                    Bk = B[k]
                    for j in range(m):
                        Ci[j] += a * Bk[j]
    return C


def mat_power(A: list[list[int]], e: int) -> list[list[int]]:
    out = A
    for _ in range(e - 1):
        out = matmul_exact(out, A)
    return out


def mat_trace(A: list[list[int]]) -> int:
    return sum(A[i][i] for i in range(len(A)))
