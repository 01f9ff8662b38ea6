# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled minor-scan kernel; contract identical to `_minorscan_py`.

Requires r < 2**31 so every intermediate product fits in a signed
64-bit integer, and matrix dimension <= 32.
"""

from libc.stdlib cimport free, malloc

IMPLEMENTATION = "cython"

DEF MAXDIM = 32


cdef long long _binom[33][33]
cdef bint _binom_ready = False


cdef void _init_binom() noexcept nogil:
    cdef int i, j
    for i in range(33):
        _binom[i][0] = 1
        for j in range(1, 33):
            _binom[i][j] = 0
    for i in range(1, 33):
        for j in range(1, i + 1):
            _binom[i][j] = _binom[i - 1][j - 1] + _binom[i - 1][j]


cdef long long _pow_mod(long long base, long long e, long long r) noexcept nogil:
    cdef long long result = 1
    base %= r
    while e:
        if e & 1:
            result = result * base % r
        e >>= 1
        if e:
            base = base * base % r
    return result


cdef void _unrank(long long rank, int n, int k, int* out) noexcept nogil:
    cdef int i, x = 0
    cdef long long c
    for i in range(k):
        c = _binom[n - 1 - x][k - 1 - i]
        while c <= rank:
            rank -= c
            x += 1
            c = _binom[n - 1 - x][k - 1 - i]
        out[i] = x
        x += 1


cdef bint _next_comb(int* idx, int n, int k) noexcept nogil:
    cdef int i = k - 1, j
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


cdef long long _det_mod(int* rows, int* cols, long long* mat, int dim, int k,
                        long long r) noexcept nogil:
    cdef long long a[MAXDIM][MAXDIM]
    cdef long long det = 1, pivot, inv, f, tmp
    cdef int i, j, c, piv
    for i in range(k):
        for j in range(k):
            a[i][j] = mat[rows[i] * dim + cols[j]]
    for c in range(k):
        piv = c
        while piv < k and a[piv][c] == 0:
            piv += 1
        if piv == k:
            return 0
        if piv != c:
            for j in range(c, k):
                tmp = a[c][j]
                a[c][j] = a[piv][j]
                a[piv][j] = tmp
            det = r - det
        pivot = a[c][c]
        det = det * pivot % r
        inv = _pow_mod(pivot, r - 2, r)
        for i in range(c + 1, k):
            f = a[i][c]
            if f:
                f = f * inv % r
                for j in range(c, k):
                    a[i][j] = (a[i][j] - f * a[c][j]) % r
                    if a[i][j] < 0:
                        a[i][j] += r
    return det


def scan_level(mat, long long r, int k, long long row_rank_start,
               long long row_rank_stop, long long col_rank_start=0,
               int max_candidates=4096):
    """See `_minorscan_py.scan_level`; same contract, compiled."""
    global _binom_ready
    cdef int dim = len(mat)
    if dim > MAXDIM:
        raise ValueError("compiled kernel supports dimension <= 32")
    if r >= (<long long> 1) << 31:
        raise ValueError("compiled kernel requires a 31-bit modulus")
    if not _binom_ready:
        _init_binom()
        _binom_ready = True

    cdef long long* cmat = <long long*> malloc(dim * dim * sizeof(long long))
    cdef long long* cand_buf = <long long*> malloc(2 * max_candidates * sizeof(long long))
    if cmat == NULL or cand_buf == NULL:
        free(cmat)
        free(cand_buf)
        raise MemoryError
    cdef int i, j
    for i in range(dim):
        row = mat[i]
        for j in range(dim):
            cmat[i * dim + j] = row[j] % r

    cdef int rows[MAXDIM]
    cdef int cols[MAXDIM]
    cdef long long n_cols = 0, n_checked = 0, row_rank, col_rank
    cdef long long resume_row = row_rank_stop, resume_col = 0
    cdef int n_cand = 0
    cdef bint done = True, first = True, row_alive
    cdef long long rmask, cmask

    try:
        with nogil:
            n_cols = _binom[dim][k]
            _unrank(row_rank_start, dim, k, rows)
            row_rank = row_rank_start
            while row_rank < row_rank_stop:
                if first and col_rank_start:
                    _unrank(col_rank_start, dim, k, cols)
                    col_rank = col_rank_start
                else:
                    for i in range(k):
                        cols[i] = i
                    col_rank = 0
                first = False
                while True:
                    if _det_mod(rows, cols, cmat, dim, k, r) == 0:
                        rmask = 0
                        cmask = 0
                        for i in range(k):
                            rmask |= (<long long> 1) << rows[i]
                            cmask |= (<long long> 1) << cols[i]
                        cand_buf[2 * n_cand] = rmask
                        cand_buf[2 * n_cand + 1] = cmask
                        n_cand += 1
                    n_checked += 1
                    col_rank += 1
                    if n_cand >= max_candidates:
                        done = False
                        if col_rank < n_cols:
                            resume_row = row_rank
                            resume_col = col_rank
                        elif row_rank + 1 < row_rank_stop:
                            resume_row = row_rank + 1
                            resume_col = 0
                        else:
                            done = True
                            resume_row = row_rank_stop
                            resume_col = 0
                        break
                    if not _next_comb(cols, dim, k):
                        break
                if not done:
                    break
                row_rank += 1
                if row_rank < row_rank_stop:
                    row_alive = _next_comb(rows, dim, k)
                    if not row_alive:
                        break

        candidates = []
        for i in range(n_cand):
            rmask = cand_buf[2 * i]
            cmask = cand_buf[2 * i + 1]
            rtup = tuple(j for j in range(dim) if rmask & ((<long long> 1) << j))
            ctup = tuple(j for j in range(dim) if cmask & ((<long long> 1) << j))
            candidates.append((rtup, ctup))
        return n_checked, candidates, bool(done), resume_row, resume_col
    finally:
        free(cmat)
        free(cand_buf)
