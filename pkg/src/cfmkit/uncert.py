"""Support uncertainty bounds for symmetric group-ring elements.

For a nonzero chi-symmetric f the sum |supp(f)| + |supp(f^)| is bounded
below by a case split on |H| and on vanishing at zero; the bound is an
actual theorem only where the (F_q, chi) pair has the nonvanishing
minors property, so every entry point here first demands that the NVM
hypothesis be established: automatic for prime fields, by certificate
(an AllMinorsNonzero report) otherwise.

The module also constructs extremal elements realizing any prescribed
pair of H-closed supports meeting the threshold, and checks the
H-closed strengthening of the Cauchy-Davenport sumset inequality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cfm import ALL_MINORS_NONZERO, NvmReport, build_matrix, check_nvm, default_reps
from .chars import SubgroupChar
from .cyclo import CycloMatrix, CycloNum, solve_exact
from .errors import (
    NotHClosed,
    NotSymmetric,
    NvmNotEstablished,
    RangeViolation,
    ThresholdNotMet,
    ZeroElement,
    ZeroMembershipViolation,
)
from .field import FieldCtx, FieldElt, Subgroup
from .gring import GroupRingElt, is_chi_symmetric, u_basis
from .modhom import hom_for_denominators
from .ntheory import divisors

CASE_NONTRIVIAL = "Nontrivial"
CASE_BOTH_ZERO = "TrivialBothZero"
CASE_ONE_ZERO = "TrivialOneZero"
CASE_NEITHER_ZERO = "TrivialNeitherZero"


@dataclass(frozen=True)
class UncertaintyBound:
    chi: SubgroupChar
    case: str
    bound: int


def bound_for(chi: SubgroupChar, f0_zero: bool | None = None,
              fhat0_zero: bool | None = None) -> UncertaintyBound:
    """The case-selected lower bound on |supp(f)| + |supp(f^)|.

    The vanishing flags matter only for trivial chi; for nontrivial chi
    both vanishings are forced and the single bound q + |H| - 1 applies.
    """
    q = chi.field.q
    h = chi.H.order
    if not chi.is_trivial():
        return UncertaintyBound(chi, CASE_NONTRIVIAL, q + h - 1)
    if f0_zero and fhat0_zero:
        return UncertaintyBound(chi, CASE_BOTH_ZERO, q + 2 * h - 1)
    if f0_zero or fhat0_zero:
        return UncertaintyBound(chi, CASE_ONE_ZERO, q + h)
    return UncertaintyBound(chi, CASE_NEITHER_ZERO, q + 1)


# ---------------------------------------------------------------------------
# exact spectral supports (screen-certified, confirm-on-zero)
# ---------------------------------------------------------------------------

def _denominators(f: GroupRingElt) -> set[int]:
    dens = set()
    for c in f.coeffs.values():
        for x in c.coeffs:
            if isinstance(x, Fraction) and x.denominator != 1:
                dens.add(x.denominator)
    return dens


def spectral_support(f: GroupRingElt) -> frozenset:
    """supp(f^) as a twist set, decided exactly for every twist.

    Each value is first screened through a ring map into a prime field
    (nonzero image proves nonzero); only images of zero fall through to
    canonical reduction, so the result is exact everywhere.
    """
    ctx = f.field
    scalars = f.scalars
    N = scalars.N
    step = N // ctx.p
    hom = hom_for_denominators(N, _denominators(f))
    items = [
        (b, [(i, c) for i, c in enumerate(fb.coeffs) if c])
        for b, fb in f.coeffs.items()
    ]
    supp = set()
    for a in ctx.elements():
        terms: dict[int, object] = {}
        for b, coeffs in items:
            e = step * ctx.abs_trace(a * b) % N
            for i, c in coeffs:
                k = (i + e) % N
                terms[k] = terms.get(k, 0) + c
        if hom.image_expdict(terms) != 0:
            supp.add(a)
        elif not scalars.expdict_to_cyclo(terms).is_zero():
            supp.add(a)
    return frozenset(supp)


def spectrum_value(f: GroupRingElt, a: FieldElt) -> CycloNum:
    """f^(eps_a), exactly."""
    ctx = f.field
    scalars = f.scalars
    N = scalars.N
    step = N // ctx.p
    terms: dict[int, object] = {}
    for b, fb in f.coeffs.items():
        e = step * ctx.abs_trace(a * b) % N
        for i, c in enumerate(fb.coeffs):
            if c:
                k = (i + e) % N
                terms[k] = terms.get(k, 0) + c
    return scalars.expdict_to_cyclo(terms)


# ---------------------------------------------------------------------------
# NVM establishment
# ---------------------------------------------------------------------------

def require_nvm(chi: SubgroupChar, nvm: NvmReport | None):
    """Prime fields qualify by theorem; elsewhere a certificate is required."""
    ctx = chi.field
    if ctx.n == 1:
        return
    if isinstance(nvm, NvmReport) and nvm.verdict == ALL_MINORS_NONZERO:
        return
    raise NvmNotEstablished(
        f"(q={ctx.q}, index={chi.H.m}, t={chi.t}) needs an AllMinorsNonzero "
        "certificate; pass the report from check_nvm"
    )


def establish_nvm(chi: SubgroupChar, budget=None, threads: int = 1) -> NvmReport:
    """Convenience: run the scan that verify/construct can then rely on."""
    return check_nvm(build_matrix(chi).matrix, budget, threads)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UncertaintyCheck:
    lhs: int
    bound: UncertaintyBound
    holds: bool
    supp_f: int
    supp_fhat: int
    f0_zero: bool
    fhat0_zero: bool
    restricted_lhs: int
    restricted_rhs: int  # |R|; the strict inequality lhs > rhs must hold
    restricted_holds: bool

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "bound": self.bound.bound,
            "case": self.bound.case,
            "holds": self.holds,
            "supp_f": self.supp_f,
            "supp_fhat": self.supp_fhat,
            "f0_zero": self.f0_zero,
            "fhat0_zero": self.fhat0_zero,
            "restricted_lhs": self.restricted_lhs,
            "restricted_rhs": self.restricted_rhs,
            "restricted_holds": self.restricted_holds,
        }


def verify_uncertainty(f: GroupRingElt, chi: SubgroupChar,
                       nvm: NvmReport | None = None) -> UncertaintyCheck:
    """Exact support counts of f and f^ against the case bound."""
    require_nvm(chi, nvm)
    if f.is_zero():
        raise ZeroElement("the uncertainty bound concerns nonzero elements")
    if not is_chi_symmetric(f, chi):
        raise NotSymmetric("element is not chi-symmetric")
    ctx = f.field
    supp_f = f.support()
    fhat_supp = spectral_support(f)
    zero = ctx.zero()
    f0_zero = zero not in supp_f
    fhat0_zero = zero not in fhat_supp
    bound = bound_for(chi, f0_zero, fhat0_zero)
    lhs = len(supp_f) + len(fhat_supp)
    reps = frozenset(default_reps(chi))
    restricted_lhs = len(supp_f & reps) + len(fhat_supp & reps)
    return UncertaintyCheck(
        lhs=lhs,
        bound=bound,
        holds=lhs >= bound.bound,
        supp_f=len(supp_f),
        supp_fhat=len(fhat_supp),
        f0_zero=f0_zero,
        fhat0_zero=fhat0_zero,
        restricted_lhs=restricted_lhs,
        restricted_rhs=len(reps),
        restricted_holds=restricted_lhs > len(reps),
    )


# ---------------------------------------------------------------------------
# extremal construction
# ---------------------------------------------------------------------------

def _check_h_closed(ctx: FieldCtx, H: Subgroup, A: frozenset, name: str):
    for a in A:
        for h in H.members:
            if h * a not in A:
                raise NotHClosed(f"{name} is not H-closed (misses {h * a} = h*{a})")


def construct_extremal(chi: SubgroupChar, A, B,
                       nvm: NvmReport | None = None) -> GroupRingElt:
    """A chi-symmetric f with supp(f) = A and supp(f^) = eps_B, exactly.

    A and B must be H-closed and meet the case threshold.  The result is
    post-verified: both supports are recomputed exactly before return.
    Coefficients live in the smallest scalar field containing zeta_p and
    the values of chi, which keeps the linear solves small.
    """
    ctx = chi.field
    A = frozenset(A)
    B = frozenset(B)
    require_nvm(chi, nvm)
    _check_h_closed(ctx, chi.H, A, "A")
    _check_h_closed(ctx, chi.H, B, "B")
    zero = ctx.zero()
    if not chi.is_trivial() and (zero in A or zero in B):
        raise ZeroMembershipViolation("0 cannot be in a support for nontrivial chi")

    R = default_reps(chi)
    S = [r for r in R if r in A]
    T = [r for r in R if r in B]
    n = len(R) + 1
    if len(S) + len(T) < n:
        raise ThresholdNotMet(
            f"|A|+|B| = {len(A) + len(B)} is below the "
            f"{bound_for(chi, zero not in A, zero not in B).case} threshold"
        )

    scalars = ctx.scalar_field(chi.order())
    # combined index space: group side first, then spectral side
    U = [("c", r) for r in S] + [("s", t) for t in T]

    if len(U) == n:
        blocks = [U]
    else:
        s0 = len(U) % n
        if s0 == 0:
            blocks = [U[i: i + n] for i in range(0, len(U), n)]
        else:
            blocks = [U[:n]] + [U[i: i + n] for i in range(s0, len(U), n)]

    parts = [_realize_block(chi, R, block, scalars) for block in blocks]

    if len(parts) == 1:
        f = parts[0]
    else:
        # scale the first part so overlaps with it cannot cancel
        head = blocks[0]
        forbidden = []
        for j in range(1, len(blocks)):
            overlap = [idx for idx in blocks[j] if idx in set(head)]
            for idx in overlap:
                v1 = _coordinate(parts[0], idx)
                vj = _coordinate(parts[j], idx)
                forbidden.append(-vj / v1)
        lam = 1
        while any(r.is_rational() and r.as_fraction() == lam for r in forbidden):
            lam += 1
        f = parts[0].scale(lam)
        for part in parts[1:]:
            f = f + part

    if f.support() != A:
        raise AssertionError("constructed element misses the requested support")
    if spectral_support(f) != B:
        raise AssertionError("constructed element misses the requested spectral support")
    return f


_ENTRY_CACHE: dict = {}


def _entry_table(chi: SubgroupChar, scalars) -> dict:
    """eps_y(u_(chi,s)) for all representative pairs, computed once per
    (chi, scalar field) and sliced by every block solve."""
    key = (chi, scalars.N)
    tbl = _ENTRY_CACHE.get(key)
    if tbl is not None:
        return tbl
    ctx = chi.field
    amb_N = ctx.cyclo.N
    step = scalars.N // ctx.p
    h_exps = []
    for h in chi.H.sorted_members():
        e_amb = chi.exponent_at(h)
        assert (e_amb * scalars.N) % amb_N == 0
        h_exps.append((h, e_amb * scalars.N // amb_N))
    tbl = {}
    for s in default_reps(chi):
        for y in default_reps(chi):
            terms: dict[int, int] = {}
            for h, ce in h_exps:
                e = (ce + step * ctx.abs_trace(h * s * y)) % scalars.N
                terms[e] = terms.get(e, 0) + 1
            tbl[(s, y)] = scalars.expdict_to_cyclo(terms)
    _ENTRY_CACHE[key] = tbl
    return tbl


def _realize_block(chi: SubgroupChar, R, block, scalars) -> GroupRingElt:
    """One threshold-tight instance: an element supported (over the
    representatives) exactly on the block's group side, whose transform
    over the representatives is supported exactly on its spectral side."""
    ctx = chi.field
    S_blk = [r for kind, r in block if kind == "c"]
    T_blk = [t for kind, t in block if kind == "s"]
    t_star = T_blk[0]  # value order; any choice works
    keep = set(T_blk)
    Y = [r for r in R if r not in keep] + [t_star]
    Y.sort(key=lambda e: e.value)
    tbl = _entry_table(chi, scalars)
    matrix = CycloMatrix.build(scalars, [[tbl[(s, y)] for s in S_blk] for y in Y])
    rhs = [scalars.one() if y == t_star else scalars.zero() for y in Y]
    coeffs = solve_exact(matrix, rhs)
    f = GroupRingElt.zero(ctx, scalars)
    for s, c in zip(S_blk, coeffs):
        f = f + u_basis(chi, s, scalars).scale(c)
    return f


def _coordinate(f: GroupRingElt, idx) -> CycloNum:
    kind, elt = idx
    if kind == "c":
        return f.coeff(elt)
    return spectrum_value(f, elt)


# ---------------------------------------------------------------------------
# randomized soundness harness
# ---------------------------------------------------------------------------

def random_soundness_run(chi: SubgroupChar, trials: int, seed: int = 0, box: int = 9,
                         nvm: NvmReport | None = None, collect=None):
    """Verify `trials` seeded random nonzero chi-symmetric elements.

    Returns (checked, violations); a sound implementation returns an
    empty violation list.  `collect`, when given, receives every checked
    element (used by the CLI to serialize them for re-checking).
    """
    from .gring import random_chi_symmetric

    rng = random.Random(seed)
    scalars = chi.field.scalar_field(max(chi.order(), 1))
    violations = []
    for i in range(trials):
        f = random_chi_symmetric(chi, rng, box, scalars)
        result = verify_uncertainty(f, chi, nvm)
        if collect is not None:
            collect(f, result)
        if not (result.holds and result.restricted_holds):
            violations.append((i, result))
    return trials, violations


# ---------------------------------------------------------------------------
# Cauchy-Davenport over prime fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CdReport:
    sumset: frozenset
    size_a: int
    size_b: int
    size_sum: int
    h_nontrivial: bool
    a_closed: bool
    b_closed: bool
    zero_in_a: bool
    zero_in_b: bool
    zero_in_sum: bool
    classical_bound: int
    classical_holds: bool
    improved_applicable: bool
    improved_bound: int | None
    improved_holds: bool | None
    size_cap_holds: bool | None  # |A| + |B| <= p - 1 under the hypotheses

    def to_json(self) -> dict:
        return {
            "sumset": sorted(e.value for e in self.sumset),
            "lhs": self.size_sum,
            "classical": self.classical_bound,
            "classical_holds": self.classical_holds,
            "improved_applicable": self.improved_applicable,
            "improved": self.improved_bound,
            "improved_holds": self.improved_holds,
            "size_cap_holds": self.size_cap_holds,
            "hypotheses": {
                "h_nontrivial": self.h_nontrivial,
                "a_closed": self.a_closed,
                "b_closed": self.b_closed,
                "zero_in_a": self.zero_in_a,
                "zero_in_b": self.zero_in_b,
                "zero_in_sum": self.zero_in_sum,
            },
        }


def _is_h_closed(H: Subgroup, A: frozenset) -> bool:
    return all(h * a in A for a in A for h in H.members)


def cd_check(H: Subgroup, A, B) -> CdReport:
    """Brute-force sumset check of the classical and H-closed bounds."""
    ctx = H.owner
    if ctx.n != 1:
        raise ValueError("the sumset bounds are stated over prime fields")
    A = frozenset(A)
    B = frozenset(B)
    if not A or not B:
        raise ValueError("A and B must be nonempty")
    p = ctx.p
    sumset = frozenset(a + b for a in A for b in B)
    zero = ctx.zero()
    h_nontrivial = H.order > 1
    a_closed = _is_h_closed(H, A)
    b_closed = _is_h_closed(H, B)
    zero_in_a = zero in A
    zero_in_b = zero in B
    zero_in_sum = zero in sumset
    classical = min(len(A) + len(B) - 1, p)
    applicable = (
        h_nontrivial and a_closed and b_closed
        and not zero_in_a and not zero_in_b and not zero_in_sum
    )
    improved = len(A) + len(B) if applicable else None
    return CdReport(
        sumset=sumset,
        size_a=len(A),
        size_b=len(B),
        size_sum=len(sumset),
        h_nontrivial=h_nontrivial,
        a_closed=a_closed,
        b_closed=b_closed,
        zero_in_a=zero_in_a,
        zero_in_b=zero_in_b,
        zero_in_sum=zero_in_sum,
        classical_bound=classical,
        classical_holds=len(sumset) >= classical,
        improved_applicable=applicable,
        improved_bound=improved,
        improved_holds=(len(sumset) >= improved) if applicable else None,
        size_cap_holds=(len(A) + len(B) <= p - 1) if applicable else None,
    )


def h_closed_subsets(H: Subgroup, include_zero: bool):
    """All nonempty H-closed subsets of the field (or of its units)."""
    ctx = H.owner
    part = ctx.orbit_partition(H, include_zero)
    orbits = list(part.orbits)
    total = 1 << len(orbits)
    for mask in range(1, total):
        out = set()
        for i, orb in enumerate(orbits):
            if mask >> i & 1:
                out |= orb
        yield frozenset(out)


def consecutive_closure_check(p: int, a: int, b: int) -> bool:
    """True iff the run {a, ..., a+b} in F_p is H-closed for no nontrivial H.

    The run must lie in one of the two admissible half-ranges (the lower
    half, or the upper half extended by 0) and differ from {} and {0}.
    """
    from .field import construct_field

    if b < 0 or b >= p - 1:
        raise RangeViolation("run length is out of range")
    values = {(a + i) % p for i in range(b + 1)}
    lower = set(range(0, (p - 1) // 2 + 1))
    upper = set(range((p + 1) // 2, p)) | {0}
    if not (values <= lower or values <= upper):
        raise RangeViolation("run does not fit in an admissible half-range")
    if values == {0}:
        raise RangeViolation("the run {0} is excluded")
    ctx = construct_field(p, 1)
    A = frozenset(ctx.from_value(v) for v in values)
    for d in divisors(p - 1):
        if d < 2:
            continue
        H = ctx.subgroup_of_index((p - 1) // d)
        if _is_h_closed(H, A):
            return False
    return True
