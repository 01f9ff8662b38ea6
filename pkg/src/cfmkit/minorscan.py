"""Kernel selection for the minor scan: compiled extension or pure Python.

The compiled Cython kernel is preferred when it imported cleanly, the
screen prime fits in 31 bits, and the matrix is small enough for its
fixed buffers.  Setting CFMKIT_PURE=1 forces the pure twin (used by the
benchmark to compare both).
"""

from __future__ import annotations

import os

from . import _minorscan_py

try:
    from . import _minorscan_c

    HAVE_COMPILED = True
except ImportError:  # extension not built; pure fallback
    _minorscan_c = None
    HAVE_COMPILED = False

_FORCE_PURE = os.environ.get("CFMKIT_PURE", "") not in ("", "0")

unrank_combination = _minorscan_py.unrank_combination


def active_implementation(r: int = 0, dim: int = 0) -> str:
    if HAVE_COMPILED and not _FORCE_PURE and r < 2**31 and dim <= 32:
        return "cython"
    return "python"


def scan_level(mat, r, k, row_rank_start, row_rank_stop,
               col_rank_start=0, max_candidates=4096):
    if active_implementation(r, len(mat)) == "cython":
        return _minorscan_c.scan_level(
            mat, r, k, row_rank_start, row_rank_stop, col_rank_start, max_candidates
        )
    return _minorscan_py.scan_level(
        mat, r, k, row_rank_start, row_rank_stop, col_rank_start, max_candidates
    )
