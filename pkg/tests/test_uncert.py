"""Uncertainty bounds, extremal construction, and sumset checks."""

import random

import pytest

from cfmkit.chars import SubgroupChar
from cfmkit.errors import (
    NotHClosed,
    NotSymmetric,
    NvmNotEstablished,
    RangeViolation,
    ThresholdNotMet,
    ZeroElement,
    ZeroMembershipViolation,
)
from cfmkit.field import construct_field
from cfmkit.gring import GroupRingElt, fourier, is_chi_symmetric, random_chi_symmetric, u_basis
from cfmkit.uncert import (
    CASE_BOTH_ZERO,
    CASE_NEITHER_ZERO,
    CASE_NONTRIVIAL,
    CASE_ONE_ZERO,
    bound_for,
    cd_check,
    consecutive_closure_check,
    construct_extremal,
    establish_nvm,
    h_closed_subsets,
    random_soundness_run,
    spectral_support,
    spectrum_value,
    verify_uncertainty,
)


# -- bounds -------------------------------------------------------------------

def test_bound_table_p37():
    f37 = construct_field(37, 1)
    chi = SubgroupChar(f37.subgroup_of_index(9), 0)
    assert bound_for(chi, True, True) == bound_for(chi, True, True)
    assert bound_for(chi, True, True).bound == 44
    assert bound_for(chi, True, False).bound == 41
    assert bound_for(chi, False, True).bound == 41
    assert bound_for(chi, False, False).bound == 38
    assert bound_for(chi, True, True).case == CASE_BOTH_ZERO
    assert bound_for(chi, True, False).case == CASE_ONE_ZERO
    assert bound_for(chi, False, False).case == CASE_NEITHER_ZERO


def test_bound_trivial_group(f7):
    chi = SubgroupChar(f7.subgroup_of_index(6), 0)
    assert bound_for(chi, False, False).bound == 8  # p + 1


def test_bound_sign_character(f7):
    chi = SubgroupChar(f7.subgroup_of_index(3), 1)
    b = bound_for(chi)
    assert b.case == CASE_NONTRIVIAL and b.bound == 8  # q + |H| - 1 = 7 + 2 - 1


# -- spectral support agrees with the plain transform ---------------------------

def test_spectral_support_matches_fourier(f7, rng):
    for m in (1, 2, 3, 6):
        H = f7.subgroup_of_index(m)
        for t in range(H.order):
            chi = SubgroupChar(H, t)
            f = random_chi_symmetric(chi, rng)
            assert spectral_support(f) == fourier(f).support()
            for a in f7.elements():
                assert spectrum_value(f, a) == fourier(f).value(a)


# -- verify -----------------------------------------------------------------------

def test_verify_constant_saturates(f7):
    chi = SubgroupChar(f7.subgroup_of_index(1), 0)
    one = GroupRingElt(f7, {a: f7.cyclo.one() for a in f7.elements()})
    res = verify_uncertainty(one, chi)
    assert res.lhs == 8 and res.bound.case == CASE_NEITHER_ZERO and res.holds
    assert res.supp_f == 7 and res.supp_fhat == 1


def test_verify_u_basis_case_detection(f5):
    H = f5.subgroup_of_index(2)
    chi = SubgroupChar(H, 0)
    f = u_basis(chi, f5.one())
    res = verify_uncertainty(f, chi)
    assert res.f0_zero
    assert res.holds
    assert res.lhs >= res.bound.bound


def test_verify_rejects_zero_and_asymmetric(f7):
    chi = SubgroupChar(f7.subgroup_of_index(3), 0)
    with pytest.raises(ZeroElement):
        verify_uncertainty(GroupRingElt.zero(f7), chi)
    with pytest.raises(NotSymmetric):
        verify_uncertainty(GroupRingElt.delta(f7, f7.one()), chi)


def test_verify_requires_nvm_certificate():
    f16 = construct_field(2, 4)
    H = f16.subgroup_of_index(3)
    chi = SubgroupChar(H, 0)
    f = u_basis(chi, f16.one())
    with pytest.raises(NvmNotEstablished):
        verify_uncertainty(f, chi)


def test_verify_with_certificate(f25, rng):
    # GF(25), index 2, chi of order 12 (not 3 or 4): NVM holds, bounds apply
    H = f25.subgroup_of_index(2)
    chi = SubgroupChar(H, 1)
    cert = establish_nvm(chi)
    assert cert.verdict == "AllMinorsNonzero"
    checked, violations = random_soundness_run(chi, 25, seed=7, nvm=cert)
    assert checked == 25 and not violations


def test_soundness_run_small(f7):
    for m in (1, 2, 3, 6):
        H = f7.subgroup_of_index(m)
        for t in range(H.order):
            chi = SubgroupChar(H, t)
            checked, violations = random_soundness_run(chi, 50, seed=3)
            assert checked == 50 and not violations


def test_nontrivial_chi_forces_zero_at_origin(f7, rng):
    # vanishing at 0 on both sides is automatic for nontrivial chi
    for m in (1, 2, 3):
        H = f7.subgroup_of_index(m)
        for t in range(1, H.order):
            chi = SubgroupChar(H, t)
            f = random_chi_symmetric(chi, rng)
            res = verify_uncertainty(f, chi)
            assert res.f0_zero and res.fhat0_zero
            assert res.bound.case == CASE_NONTRIVIAL


# -- extremal construction ------------------------------------------------------------

def _orbit_union(ctx, H, values):
    out = set()
    for v in values:
        e = ctx.from_value(v)
        if e.is_zero():
            out.add(e)
        else:
            out.update(h * e for h in H.members)
    return frozenset(out)


def test_extremal_tight_case(f7):
    # |A| + |B| exactly at the threshold, single solve
    chi = SubgroupChar(f7.subgroup_of_index(6), 0)
    A = frozenset(f7.from_value(v) for v in (0, 1, 2, 3))
    B = frozenset(f7.from_value(v) for v in (2, 3, 4, 5))
    f = construct_extremal(chi, A, B)
    assert f.support() == A
    assert spectral_support(f) == B


def test_extremal_overfull_case(f7):
    # above the threshold: exercises the block cover and lambda choice
    chi = SubgroupChar(f7.subgroup_of_index(6), 0)
    A = frozenset(f7.elements())
    B = frozenset(f7.elements())
    f = construct_extremal(chi, A, B)
    assert f.support() == A
    assert spectral_support(f) == B


def test_extremal_sign_character(f5):
    H = f5.subgroup_of_index(2)
    sgn = SubgroupChar(H, 1)
    A = frozenset(f5.units())
    f = construct_extremal(sgn, A, A)
    assert is_chi_symmetric(f, sgn)
    assert f.support() == A
    assert spectral_support(f) == A


def test_extremal_threshold_not_met(f7):
    chi = SubgroupChar(f7.subgroup_of_index(6), 0)
    A = frozenset(f7.from_value(v) for v in (0, 1))
    B = frozenset(f7.from_value(v) for v in (1, 2))
    with pytest.raises(ThresholdNotMet):
        construct_extremal(chi, A, B)


def test_extremal_validation(f7):
    H = f7.subgroup_of_index(3)
    chi = SubgroupChar(H, 0)
    not_closed = frozenset([f7.from_value(1)])  # orbit is {1, 6}
    with pytest.raises(NotHClosed):
        construct_extremal(chi, not_closed, frozenset(f7.elements()))
    sgn = SubgroupChar(H, 1)
    with_zero = _orbit_union(f7, H, [0, 1, 2, 3])
    with pytest.raises(ZeroMembershipViolation):
        construct_extremal(sgn, with_zero, with_zero)


def test_extremal_nonprime_with_certificate(f25):
    H = f25.subgroup_of_index(2)
    chi = SubgroupChar(H, 0)
    cert = establish_nvm(chi)
    part = f25.orbit_partition(H, include_zero=True)
    # A = everything, B = everything: far above threshold
    A = frozenset(f25.elements())
    f = construct_extremal(chi, A, A, cert)
    assert f.support() == A and spectral_support(f) == A
    with pytest.raises(NvmNotEstablished):
        construct_extremal(chi, A, A)


def test_extremal_spot_p11():
    f11 = construct_field(11, 1)
    H = f11.subgroup_of_index(2)  # order 5
    chi = SubgroupChar(H, 0)
    part = f11.orbit_partition(H, include_zero=True)
    orbits = [frozenset(o) for o in part.orbits]
    A = frozenset().union(*orbits)  # all of F_11
    B = frozenset().union(*(o for o in orbits if min(e.value for e in o) != 0))
    # |A| + |B| = 11 + 10 = 21 >= q + |H| = 16 (zero in exactly one)
    f = construct_extremal(chi, A, B)
    assert f.support() == A and spectral_support(f) == B


# -- Cauchy-Davenport ------------------------------------------------------------------

def test_cd_example_families(f7):
    H = f7.subgroup_of_index(3)
    a = f7.from_value(2)
    A = frozenset([a, -a])
    rep = cd_check(H, A, A)
    assert rep.size_sum == 3 == rep.size_a + rep.size_b - 1
    assert not rep.improved_applicable  # 0 lands in A + B

    b = f7.from_value(3)
    B = frozenset([b, -b])
    rep = cd_check(H, A, B)
    assert rep.size_sum == 4 == rep.size_a + rep.size_b
    assert rep.improved_applicable and rep.improved_holds

    Z = frozenset([f7.zero()])
    rep = cd_check(H, Z, B)
    assert rep.size_sum == rep.size_a + rep.size_b - 1
    assert not rep.improved_applicable


def test_cd_not_closed_single(f7):
    H = f7.subgroup_of_index(3)
    A = _orbit_union(f7, H, [1, 2])
    B = frozenset([f7.from_value(3)])
    rep = cd_check(H, A, B)
    assert not rep.b_closed and not rep.improved_applicable
    assert rep.size_sum == rep.size_a  # |A + {b}| = |A|


@pytest.mark.parametrize("p", [5, 7, 11])
def test_cd_exhaustive_small(p):
    ctx = construct_field(p, 1)
    from cfmkit.ntheory import divisors

    for d in divisors(p - 1):
        if d < 2:
            continue
        H = ctx.subgroup_of_index((p - 1) // d)
        for A in h_closed_subsets(H, False):
            for B in h_closed_subsets(H, False):
                rep = cd_check(H, A, B)
                assert rep.classical_holds
                if rep.improved_applicable:
                    assert rep.size_cap_holds
                    assert rep.improved_holds


def test_consecutive_closure():
    assert consecutive_closure_check(13, 1, 2)  # {1,2,3}
    assert consecutive_closure_check(11, 3, 2)  # {3,4,5}
    assert consecutive_closure_check(7, 5, 2)  # {5,6,0} wraps into the upper range
    with pytest.raises(RangeViolation):
        consecutive_closure_check(7, 0, 0)  # {0} excluded
    with pytest.raises(RangeViolation):
        consecutive_closure_check(11, 4, 3)  # {4..7} straddles the halves


def test_consecutive_closure_exhaustive_p13():
    # every admissible run in the lower half is H-closed for no nontrivial H
    p = 13
    for a in range(0, (p - 1) // 2 + 1):
        for b in range(0, (p - 1) // 2 - a + 1):
            if a == 0 and b == 0:
                continue
            assert consecutive_closure_check(p, a, b)
