"""Pure-Python minor-scan kernel.

Reference implementation of the hot loop: enumerate k-by-k minors of a
residue matrix in lexicographic (row-subset, column-subset) order and
report every minor whose determinant vanishes mod r.  The compiled twin
in `_minorscan_c.pyx` implements the same contract; `cfmkit.minorscan`
picks whichever is importable.
"""

from __future__ import annotations

from math import comb

IMPLEMENTATION = "python"


def unrank_combination(rank: int, n: int, k: int) -> list[int]:
    """The `rank`-th k-subset of range(n) in lexicographic order."""
    out = []
    x = 0
    for i in range(k):
        c = comb(n - 1 - x, k - 1 - i)
        while c <= rank:
            rank -= c
            x += 1
            c = comb(n - 1 - x, k - 1 - i)
        out.append(x)
        x += 1
    return out


def _next_combination(idx: list[int], n: int) -> bool:
    k = len(idx)
    i = k - 1
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


def _det_mod(rows, cols, mat, r: int) -> int:
    k = len(rows)
    a = [[mat[i][j] for j in cols] for i in rows]
    det = 1
    for c in range(k):
        piv = c
        while piv < k and a[piv][c] == 0:
            piv += 1
        if piv == k:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = r - det
        pivot = a[c][c]
        det = det * pivot % r
        inv = pow(pivot, r - 2, r)
        for i in range(c + 1, k):
            f = a[i][c]
            if f:
                f = f * inv % r
                row_i, row_c = a[i], a[c]
                for j in range(c, k):
                    row_i[j] = (row_i[j] - f * row_c[j]) % r
    return det


def scan_level(mat, r: int, k: int, row_rank_start: int, row_rank_stop: int,
               col_rank_start: int = 0, max_candidates: int = 4096):
    """Screen minors of size k over a block of row subsets.

    Returns (n_checked, candidates, done, resume_row_rank, resume_col_rank):
    `candidates` lists (row_tuple, col_tuple) whose minor is 0 mod r, in
    scan order.  When the candidate buffer fills, `done` is False and the
    resume ranks point at the first unscanned minor.
    """
    dim = len(mat)
    n_cols = comb(dim, k)
    rows = unrank_combination(row_rank_start, dim, k)
    row_rank = row_rank_start
    n_checked = 0
    candidates = []
    first = True
    while row_rank < row_rank_stop:
        if first and col_rank_start:
            cols = unrank_combination(col_rank_start, dim, k)
            col_rank = col_rank_start
        else:
            cols = list(range(k))
            col_rank = 0
        first = False
        while True:
            if _det_mod(rows, cols, mat, r) == 0:
                candidates.append((tuple(rows), tuple(cols)))
            n_checked += 1
            col_rank += 1
            if len(candidates) >= max_candidates:
                if col_rank < n_cols:
                    return n_checked, candidates, False, row_rank, col_rank
                if row_rank + 1 < row_rank_stop:
                    return n_checked, candidates, False, row_rank + 1, 0
                return n_checked, candidates, True, row_rank_stop, 0
            if not _next_combination(cols, dim):
                break
        row_rank += 1
        if row_rank < row_rank_stop:
            if not _next_combination(rows, dim):
                break
    return n_checked, candidates, True, row_rank_stop, 0
