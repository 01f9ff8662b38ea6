"""Field construction, arithmetic, traces, subgroups, orbits."""

import pytest

from cfmkit.errors import (
    CapExceeded,
    DivisionByZero,
    NotADivisor,
    NotASubfield,
    NotPrime,
    ZeroHasNoLog,
)
from cfmkit.field import construct_field


def test_gf2_model():
    f = construct_field(2, 1)
    assert f.q == 2
    assert f.modulus == (0, 1)  # the polynomial x
    assert f.g.value == 1


def test_gf25_generator_order(f25):
    assert f25.q == 25
    g = f25.g
    assert all(f25.pow(g, k).value != 1 for k in range(1, 24))
    assert f25.pow(g, 24).value == 1


def test_not_prime():
    with pytest.raises(NotPrime):
        construct_field(4, 1)


def test_cap():
    with pytest.raises(CapExceeded):
        construct_field(2, 21)
    construct_field(2, 8, cap=256)
    with pytest.raises(CapExceeded):
        construct_field(2, 9, cap=256)


def test_prime_field_arithmetic(f5):
    a, b = f5.from_value(3), f5.from_value(4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (-a).value == 2


def test_gf4_forced_product(f4):
    # with modulus x^2 + x + 1: x * x = x + 1
    x = f4.from_value(2)
    assert (x * x).value == 3


def test_all_unit_inverses(f25):
    one = f25.one()
    for u in f25.units():
        assert u * u.inverse() == one
    with pytest.raises(DivisionByZero):
        f25.zero().inverse()


def test_abs_trace(f4, f7):
    assert f4.abs_trace(f4.zero()) == 0
    assert f4.abs_trace(f4.from_value(2)) == 1  # x + x^2 = 1
    assert f7.abs_trace(f7.from_value(3)) == 3


def test_trace_linearity_and_fibers(f25):
    for va in range(25):
        for vb in range(0, 25, 3):
            a, b = f25.from_value(va), f25.from_value(vb)
            assert f25.abs_trace(a + b) == (f25.abs_trace(a) + f25.abs_trace(b)) % 5
    fibers = {}
    for x in f25.elements():
        fibers.setdefault(f25.abs_trace(x), 0)
        fibers[f25.abs_trace(x)] += 1
    assert fibers == {c: 5 for c in range(5)}  # (q/p)-to-one


def test_rel_trace(f4):
    # identity at k = n
    x = f4.from_value(2)
    assert f4.rel_trace(x, 2) == x
    # GF(4) -> GF(2): generator maps to 1
    assert f4.rel_trace(x, 1).value == 1
    with pytest.raises(NotASubfield):
        f4.rel_trace(x, 3)


def test_rel_trace_tower():
    f16 = construct_field(2, 4)
    kernel = [x for x in f16.elements() if f16.rel_trace(x, 2).is_zero()]
    assert len(kernel) == 4  # (|F|/|K|)-to-one surjection
    # composition law: absolute = trace of the relative trace
    for v in range(16):
        x = f16.from_value(v)
        y = f16.rel_trace(x, 2)
        # absolute trace of y as an element of the subfield GF(4): y + y^2
        t = y + f16.pow(y, 2)
        assert not any(t.coeffs[1:])
        assert t.coeffs[0] == f16.abs_trace(x)


def test_subgroup_examples(f7):
    full = f7.subgroup_of_index(1)
    assert len(full.members) == 6
    trivial = f7.subgroup_of_index(6)
    assert {e.value for e in trivial.members} == {1}
    with pytest.raises(NotADivisor):
        f7.subgroup_of_index(4)


def test_subgroup_f37_order_4():
    f37 = construct_field(37, 1)
    H = f37.subgroup_of_index(9)
    assert {e.value for e in H.members} == {1, 6, 31, 36}


def test_subgroup_closure(f25):
    H = f25.subgroup_of_index(3)
    for a in H.members:
        assert a.inverse() in H
        for b in H.members:
            assert a * b in H
    assert f25.one() in H


F37_ORBITS = [
    {0},
    {1, 6, 31, 36},
    {2, 12, 25, 35},
    {3, 18, 19, 34},
    {4, 13, 24, 33},
    {5, 7, 30, 32},
    {8, 11, 26, 29},
    {9, 17, 20, 28},
    {10, 14, 23, 27},
    {15, 16, 21, 22},
]


def test_orbit_partition_f37():
    f37 = construct_field(37, 1)
    H = f37.subgroup_of_index(9)
    part = f37.orbit_partition(H, include_zero=True)
    got = [sorted(e.value for e in orb) for orb in part.orbits]
    assert got == [sorted(s) for s in F37_ORBITS]
    assert [r.value for r in part.reps] == [0, 1, 2, 3, 4, 5, 8, 9, 10, 15]


def test_orbit_partition_full_group(f7):
    H = f7.subgroup_of_index(1)
    part = f7.orbit_partition(H, include_zero=True)
    assert len(part.orbits) == 2
    assert sorted(len(o) for o in part.orbits) == [1, 6]


def test_orbit_partition_pairs(f7):
    H = f7.subgroup_of_index(3)
    part = f7.orbit_partition(H, include_zero=False)
    assert [sorted(e.value for e in o) for o in part.orbits] == [[1, 6], [2, 5], [3, 4]]


def test_orbit_sizes_match_counting(f25):
    for m in (1, 2, 3, 4, 6, 8, 12, 24):
        H = f25.subgroup_of_index(m)
        part = f25.orbit_partition(H, include_zero=True)
        sizes = sorted(len(o) for o in part.orbits)
        assert sizes == [1] + [(25 - 1) // m] * m


def test_discrete_log_roundtrip(f25):
    assert f25.discrete_log(f25.one()) == 0
    assert f25.discrete_log(f25.g) == 1
    for k in range(24):
        assert f25.discrete_log(f25.pow(f25.g, k)) == k
    with pytest.raises(ZeroHasNoLog):
        f25.discrete_log(f25.zero())


def test_determinism():
    a = construct_field(5, 2)
    b = construct_field(5, 2)
    assert a.modulus == b.modulus
    assert a.g.coeffs == b.g.coeffs
    Ha = a.orbit_partition(a.subgroup_of_index(2), True)
    Hb = b.orbit_partition(b.subgroup_of_index(2), True)
    assert [r.value for r in Ha.reps] == [r.value for r in Hb.reps]


def test_descriptor_serialization(f25):
    d = f25.descriptor()
    assert d["p"] == 5 and d["n"] == 2
    rebuilt = construct_field(d["p"], d["n"], modulus=d["modulus"])
    assert rebuilt.modulus == f25.modulus
    assert rebuilt.g == rebuilt.element(d["generator"])


def test_pinned_model():
    f = construct_field(5, 2, modulus=[2, -1, 1])
    assert f.modulus == (2, 4, 1)
    x = f.from_value(5)
    assert (x * x - x + f.from_int(2)).is_zero()
    with pytest.raises(ValueError):
        construct_field(5, 2, modulus=[1, 0, 1])  # x^2 + 1 is reducible mod 5
