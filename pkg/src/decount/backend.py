"""Kernel backend selection.

Hot inner loops (degeneracy peeling, rooted homomorphism enumeration,
layered path closures) exist twice: a numba ``@njit`` version in
``_kernels_numba`` and a pure-Python version in ``_kernels_py`` that
additionally supports arbitrary-precision integers.

Selection order:
  1. ``set_backend("python"|"numba"|"auto")`` at runtime,
  2. the ``DECOUNT_BACKEND`` environment variable (same values),
  3. default "auto": numba if it imports, pure Python otherwise.

The numba path computes in int64.  Every call site quotes an a-priori
overflow bound and falls back to the Python kernels when the bound does
not fit, so results are exact integers on either path.
"""

from __future__ import annotations

import os

_forced: str | None = None
_numba_module = None
_numba_failed = False

INT64_SAFE = 1 << 62


def set_backend(name: str) -> None:
    """Force a backend: "numba", "python" or "auto"."""
    global _forced
    if name not in ("numba", "python", "auto"):
        raise ValueError(f"unknown backend {name!r}")
    _forced = None if name == "auto" else name


def backend_name() -> str:
    """Resolve the active backend name ("numba" or "python")."""
    choice = _forced or os.environ.get("DECOUNT_BACKEND", "auto").lower()
    if choice == "python":
        return "python"
    if choice in ("numba", "auto"):
        if _load_numba() is not None:
            return "numba"
        if choice == "numba":
            raise RuntimeError("DECOUNT_BACKEND=numba but numba is not importable")
    return "python"


def _load_numba():
    global _numba_module, _numba_failed
    if _numba_module is None and not _numba_failed:
        try:
            from . import _kernels_numba

            _numba_module = _kernels_numba
        except ImportError:
            _numba_failed = True
    return _numba_module


def numba_kernels():
    """The numba kernel module, or None when unavailable/disabled."""
    if backend_name() == "numba":
        return _load_numba()
    return None


def thread_hint() -> int:
    """Advisory thread count from DECOUNT_THREADS / --threads.

    Recorded for CLI plumbing; kernels are single-threaded so that results
    are bit-identical regardless of schedule.
    """
    raw = os.environ.get("DECOUNT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
