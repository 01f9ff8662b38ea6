"""Compressed Fourier matrices and the nonvanishing-minors (NVM) scan.

A matrix here is indexed by orbit representatives R (rows) and S
(columns) for the multiplicative action of a subgroup H on the field;
its (r, s) entry is eps_s applied to the basis element u_(chi,r), which
works out to the direct sum over h in H of chi(h) * eps(h*r*s).  The
classical DFT/DCT/DST matrices are the unscaled specializations.

The scan enumerates k-subsets of rows and columns (k ascending, then
lexicographic on rows, then on columns) and decides each minor exactly:
a ring map into a prime field certifies the nonzero ones outright, and
every candidate zero is confirmed with `det_exact` before it can become
the witness.  Verdicts therefore carry no tolerance at all.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .chars import MultChar, SubgroupChar, extensions, gauss_sum
from .cyclo import CycloMatrix, CycloNum, cyclo_field, det_exact
from .errors import BadRepresentatives, NotSquare, ParityError
from .field import FieldCtx, FieldElt
from .minorscan import active_implementation, scan_level
from .modhom import collect_denominators, hom_for_denominators

ALL_MINORS_NONZERO = "AllMinorsNonzero"
ZERO_MINOR_FOUND = "ZeroMinorFound"
BUDGET_EXHAUSTED = "BudgetExhausted"


# ---------------------------------------------------------------------------
# representatives and matrix construction
# ---------------------------------------------------------------------------

def default_reps(chi: SubgroupChar, policy: str = "lex", rng=None) -> list[FieldElt]:
    """Ordered orbit representatives for chi's orbit space.

    "lex": the value-smallest member of each orbit, zero first when chi
    is trivial.  "random": a seeded random member per orbit in a seeded
    random order (zero stays the rep of its own orbit).
    """
    ctx = chi.field
    part = ctx.orbit_partition(chi.H, include_zero=chi.is_trivial())
    if policy == "lex":
        return list(part.reps)
    if policy == "random":
        if rng is None:
            raise ValueError("random representative policy needs an rng")
        reps = [rng.choice(sorted(orb, key=lambda e: e.value)) for orb in part.orbits]
        rng.shuffle(reps)
        return reps
    raise ValueError(f"unknown representative policy {policy!r}")


def _validate_reps(chi: SubgroupChar, reps, side: str):
    ctx = chi.field
    part = ctx.orbit_partition(chi.H, include_zero=chi.is_trivial())
    orbit_of = {}
    for i, orb in enumerate(part.orbits):
        for e in orb:
            orbit_of[e] = i
    seen = set()
    for r in reps:
        if chi.is_trivial() is False and r.is_zero():
            raise BadRepresentatives(f"{side}: zero cannot represent an orbit for nontrivial chi")
        i = orbit_of.get(r)
        if i is None:
            raise BadRepresentatives(f"{side}: {r} is not in the orbit space")
        if i in seen:
            raise BadRepresentatives(f"{side}: duplicate representative for one orbit")
        seen.add(i)
    if len(seen) != len(part.orbits):
        raise BadRepresentatives(f"{side}: a representative is missing for some orbit")


@dataclass(frozen=True)
class CompressedMatrix:
    chi: SubgroupChar
    R: tuple
    S: tuple
    matrix: CycloMatrix

    @property
    def field(self) -> FieldCtx:
        return self.chi.field


def build_matrix(chi: SubgroupChar, R=None, S=None) -> CompressedMatrix:
    """The compressed Fourier matrix with entries eps_s(u_(chi,r))."""
    ctx = chi.field
    if R is None:
        R = default_reps(chi)
    if S is None:
        S = list(R)
    _validate_reps(chi, R, "rows")
    _validate_reps(chi, S, "cols")
    cyclo = ctx.cyclo
    N = cyclo.N
    step = N // ctx.p  # zeta_p = zeta_N^(q-1)
    h_exps = [(h, chi.exponent_at(h)) for h in chi.H.sorted_members()]
    rows = []
    for r in R:
        row = []
        for s in S:
            rs = r * s
            terms: dict[int, int] = {}
            for h, ce in h_exps:
                e = (ce + step * ctx.abs_trace(h * rs)) % N
                terms[e] = terms.get(e, 0) + 1
            row.append(cyclo.expdict_to_cyclo(terms))
        rows.append(row)
    matrix = CycloMatrix.build(
        cyclo, rows,
        row_labels=tuple(r.value for r in R),
        col_labels=tuple(s.value for s in S),
    )
    return CompressedMatrix(chi, tuple(R), tuple(S), matrix)


def entry_via_gauss(chi: SubgroupChar, r: FieldElt, s: FieldElt) -> CycloNum:
    """Independent entry formula: |H| at rs = 0, else the averaged
    Gauss-sum expression over the extensions of chi."""
    ctx = chi.field
    cyclo = ctx.cyclo
    rs = r * s
    if rs.is_zero():
        return cyclo.from_rational(chi.H.order)
    acc = cyclo.zero()
    for ext in extensions(chi):
        acc = acc + ext.conj()(rs) * _gauss_cached(ext)
    return acc * Fraction(1, chi.H.m)


_GAUSS_CACHE: dict = {}


def _gauss_cached(phi: MultChar) -> CycloNum:
    key = (id(phi.field), phi.j)
    out = _GAUSS_CACHE.get(key)
    if out is None:
        out = gauss_sum(phi)
        _GAUSS_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# classical matrices (unscaled integral models)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingCertificate:
    """Symbolic diagonal factors relating an unscaled model to its
    textbook form.  Row/column scalings by nonzero numbers cannot create
    or destroy zero minors, so NVM verdicts transfer as-is."""

    kind: str
    row_factors: tuple
    col_factors: tuple


def classical_dft(n: int) -> CycloMatrix:
    """Unscaled DFT model: entries zeta_n^(r*s), indices 0..n-1."""
    if n < 1:
        raise ValueError("order must be positive")
    field = cyclo_field(n)
    rows = [[field.zeta_pow(r * s) for s in range(n)] for r in range(n)]
    return CycloMatrix.build(field, rows, tuple(range(n)), tuple(range(n)))


def classical_dct(n: int) -> CycloMatrix:
    """Unscaled DCT model: entries zeta^(rs) + zeta^(-rs), indices
    0..(n-1)/2; odd n only."""
    if n < 1 or n % 2 == 0:
        raise ParityError("DCT model is defined for odd n")
    field = cyclo_field(n)
    half = (n + 1) // 2
    rows = [
        [field.zeta_pow(r * s) + field.zeta_pow(-r * s) for s in range(half)]
        for r in range(half)
    ]
    return CycloMatrix.build(field, rows, tuple(range(half)), tuple(range(half)))


def classical_dst(n: int) -> CycloMatrix:
    """Unscaled DST model: entries zeta^(rs) - zeta^(-rs), indices
    1..(n-1)/2; odd n >= 3 only."""
    if n < 3 or n % 2 == 0:
        raise ParityError("DST model is defined for odd n >= 3")
    field = cyclo_field(n)
    half = (n - 1) // 2
    labels = tuple(range(1, half + 1))
    rows = [
        [field.zeta_pow(r * s) - field.zeta_pow(-r * s) for s in labels]
        for r in labels
    ]
    return CycloMatrix.build(field, rows, labels, labels)


def scaling_certificate(kind: str, n: int) -> ScalingCertificate:
    if kind == "dft":
        return ScalingCertificate("dft", ("1/sqrt(n)",) * n, ("1",) * n)
    if kind == "dct":
        half = (n + 1) // 2
        rows = ("1/sqrt(2*n)",) + ("1/sqrt(n)",) * (half - 1)
        cols = ("1/sqrt(2)",) + ("1",) * (half - 1)
        return ScalingCertificate("dct", rows, cols)
    if kind == "dst":
        half = (n - 1) // 2
        return ScalingCertificate("dst", ("-i/sqrt(n)",) * half, ("1",) * half)
    raise ValueError(f"unknown classical kind {kind!r}")


# ---------------------------------------------------------------------------
# the NVM scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NvmBudget:
    max_minors: int = 10**7
    max_seconds: float | None = None
    order: str = "lex"


@dataclass(frozen=True)
class NvmReport:
    verdict: str
    witness: tuple | None  # (row index tuple, col index tuple)
    minors_checked: int
    elapsed: float
    budget: NvmBudget
    required_minors: int
    dim: int
    implementation: str
    screen_prime: int
    witness_labels: tuple | None = None

    def to_json(self, extra: dict | None = None) -> dict:
        out = {
            "verdict": self.verdict,
            "witness": None
            if self.witness is None
            else {"rows": list(self.witness[0]), "cols": list(self.witness[1])},
            "minors_checked": self.minors_checked,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "required_minors": self.required_minors,
            "dim": self.dim,
            "budget": {
                "max_minors": self.budget.max_minors,
                "max_seconds": self.budget.max_seconds,
                "order": self.budget.order,
            },
            "implementation": self.implementation,
            "screen_prime": self.screen_prime,
        }
        if self.witness_labels is not None:
            out["witness_labels"] = {
                "rows": list(self.witness_labels[0]),
                "cols": list(self.witness_labels[1]),
            }
        if extra:
            out.update(extra)
        return out


def required_minor_count(dim: int) -> int:
    return sum(comb(dim, k) ** 2 for k in range(1, dim + 1))


_BLOCK_MINOR_TARGET = 1 << 16


def check_nvm(matrix: CycloMatrix, budget: NvmBudget | None = None,
              threads: int = 1) -> NvmReport:
    """Decide the nonvanishing-minors property of a square matrix.

    Short-circuits on the lexicographically first zero minor of the
    deterministic schedule; the witness is confirmed by det_exact and is
    independent of thread count.
    """
    if matrix.nrows != matrix.ncols:
        raise NotSquare("NVM is defined for square matrices")
    budget = budget or NvmBudget()
    dim = matrix.nrows
    start = time.perf_counter()
    required = required_minor_count(dim)
    if dim == 0:
        return NvmReport(ALL_MINORS_NONZERO, None, 0, 0.0, budget, 0, 0, "none", 0)

    entries = [e for row in matrix.entries for e in row]
    hom = hom_for_denominators(matrix.field.N, collect_denominators(entries))
    mat_mod = [[hom.image(e) for e in row] for row in matrix.entries]
    impl = active_implementation(hom.r, dim)

    def finish(verdict, witness, checked):
        labels = None
        if witness is not None:
            labels = (
                tuple(matrix.row_labels[i] for i in witness[0]),
                tuple(matrix.col_labels[i] for i in witness[1]),
            )
        return NvmReport(
            verdict, witness, checked, time.perf_counter() - start, budget,
            required, dim, impl, hom.r, labels,
        )

    def confirm(rows, cols) -> bool:
        return det_exact(matrix.submatrix(rows, cols)).is_zero()

    checked = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for k in range(1, dim + 1):
            n_rows = comb(dim, k)
            n_cols = comb(dim, k)
            if checked >= budget.max_minors:
                return finish(BUDGET_EXHAUSTED, None, checked)
            # carve the level into deterministic row-rank blocks
            rows_per_block = max(1, _BLOCK_MINOR_TARGET // n_cols)
            blocks = []
            allowed = budget.max_minors - checked
            acc = 0
            r0 = 0
            while r0 < n_rows and acc < allowed:
                r1 = min(r0 + rows_per_block, n_rows)
                blocks.append((r0, r1))
                acc += (r1 - r0) * n_cols
                r0 = r1
            level_truncated = r0 < n_rows

            def scan_block(block):
                b0, b1 = block
                out_checked = 0
                out_cands = []
                row_rank, col_rank = b0, 0
                while True:
                    n, cands, done, row_rank, col_rank = scan_level(
                        mat_mod, hom.r, k, row_rank, b1, col_rank
                    )
                    out_checked += n
                    out_cands.extend(cands)
                    if done:
                        return out_checked, out_cands

            if pool is not None:
                results = list(pool.map(scan_block, blocks))
            else:
                results = map(scan_block, blocks)

            for (n, cands) in results:
                checked += n
                for rows, cols in cands:
                    if confirm(rows, cols):
                        return finish(ZERO_MINOR_FOUND, (rows, cols), checked)
                if budget.max_seconds is not None and (
                    time.perf_counter() - start > budget.max_seconds
                ):
                    return finish(BUDGET_EXHAUSTED, None, checked)
            if level_truncated:
                return finish(BUDGET_EXHAUSTED, None, checked)
        return finish(ALL_MINORS_NONZERO, None, checked)
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)


# ---------------------------------------------------------------------------
# structural witnesses and scans
# ---------------------------------------------------------------------------

def subfield_witness(chi: SubgroupChar, R=None, S=None):
    """Explicit zero minor when H lies inside a proper subfield.

    Returns (row indices, col indices) into the representative lists, or
    None when no proper subfield contains H.  For trivial chi this is the
    2x2 all-|H| submatrix on rows {0, orbit of b} and columns {0, orbit
    of 1} with b a nonzero element of zero relative trace; for nontrivial
    chi it is the single vanishing entry at (orbit of b, orbit of 1).
    """
    ctx = chi.field
    H = chi.H
    sub_deg = None
    for k in range(1, ctx.n):
        if ctx.n % k == 0 and (ctx.p**k - 1) % H.order == 0:
            sub_deg = k
            break
    if sub_deg is None:
        return None
    b = None
    for v in range(1, ctx.q):
        cand = ctx.from_value(v)
        if ctx.rel_trace(cand, sub_deg).is_zero():
            b = cand
            break
    assert b is not None, "relative trace kernel must contain a nonzero element"

    if R is None:
        R = default_reps(chi)
    if S is None:
        S = list(R)
    orbit_b = frozenset(h * b for h in H.members)
    orbit_one = frozenset(H.members)

    def locate(reps, orbit):
        for i, rep in enumerate(reps):
            if rep in orbit:
                return i
        raise BadRepresentatives("representative list misses an orbit")

    rb = locate(R, orbit_b)
    s1 = locate(S, orbit_one)
    if chi.is_trivial():
        r0 = next(i for i, rep in enumerate(R) if rep.is_zero())
        s0 = next(i for i, rep in enumerate(S) if rep.is_zero())
        return (tuple(sorted({r0, rb})), tuple(sorted({s0, s1})))
    return ((rb,), (s1,))


def prime_power(q: int):
    """(p, n) with q = p^n, or None if q is not a prime power."""
    if q < 2:
        return None
    d = 2
    while d * d <= q:
        if q % d == 0:
            n = 0
            m = q
            while m % d == 0:
                m //= d
                n += 1
            return (d, n) if m == 1 else None
        d += 1
    return (q, 1)


def nvm_scan(fields, m_filter=None, chi_filter=None, budget: NvmBudget | None = None,
             threads: int = 1, reps: str = "lex", seed: int = 0):
    """Run check_nvm over every (field, subgroup index, character) in range.

    `fields` is an iterable of FieldCtx.  Yields one report row per
    configuration, in deterministic order.
    """
    from .ntheory import divisors

    budget = budget or NvmBudget()
    for ctx in fields:
        for m in divisors(ctx.q - 1):
            if m_filter is not None and m != m_filter:
                continue
            H = ctx.subgroup_of_index(m)
            for t in range(H.order):
                if chi_filter is not None and t != chi_filter:
                    continue
                chi = SubgroupChar(H, t)
                rng = random.Random(seed * 1000003 + ctx.q * 9176 + m * 131 + t)
                policy_rng = rng if reps == "random" else None
                R = default_reps(chi, reps, policy_rng)
                cm = build_matrix(chi, R)
                report = check_nvm(cm.matrix, budget, threads)
                yield {
                    "q": ctx.q,
                    "p": ctx.p,
                    "n": ctx.n,
                    "m": m,
                    "chi": t,
                    "seed": seed,
                    **report.to_json(),
                }
