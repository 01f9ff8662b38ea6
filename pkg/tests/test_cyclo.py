"""Exact cyclotomic arithmetic: canonical forms, conjugation, determinants."""

import cmath
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfmkit.cyclo import (
    CycloMatrix,
    CycloNum,
    _poly_mul,
    cyclo_field,
    cyclotomic_poly,
    det_exact,
    solve_exact,
)
from cfmkit.errors import DivisionByZero, NotSquare, Singular


# -- cyclotomic polynomials ---------------------------------------------------

def test_phi_known_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 6, 8, 12, 20, 24, 30, 40])
def test_phi_product_identity(N):
    # independent check: the product of Phi_d over d | N is x^N - 1
    from cfmkit.ntheory import divisors

    prod = [1]
    for d in divisors(N):
        prod = _poly_mul(prod, list(cyclotomic_poly(d)))
    expected = [0] * (N + 1)
    expected[0], expected[N] = -1, 1
    assert prod == expected


# -- zeta powers and ring axioms ------------------------------------------------

def test_zeta_pow_basics():
    F = cyclo_field(3)
    assert F.zeta_pow(0) == 1
    assert (F.zeta_pow(0) + F.zeta_pow(1) + F.zeta_pow(2)).is_zero()
    F12 = cyclo_field(12)
    assert F12.zeta_pow(6) == -1


def test_zeta_pow_homomorphism():
    F = cyclo_field(20)
    for k in range(0, 40, 3):
        for j in range(0, 40, 7):
            assert F.zeta_pow(k) * F.zeta_pow(j) == F.zeta_pow(k + j)


def test_gauss_square_identity():
    F = cyclo_field(5)
    s = F.zeta_pow(1) + F.zeta_pow(4) - F.zeta_pow(2) - F.zeta_pow(3)
    assert s * s == 5


def test_scalar_ops_and_inverse():
    F = cyclo_field(7)
    x = F.zeta_pow(3) + 2
    assert (x + (-x)).is_zero()
    assert x * x.inverse() == 1
    assert F.from_rational(2).inverse() == Fraction(1, 2)
    with pytest.raises(DivisionByZero):
        F.zero().inverse()


@st.composite
def cyclo_nums(draw, N=12):
    F = cyclo_field(N)
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=6),
            min_size=F.degree,
            max_size=F.degree,
        )
    )
    return F.from_coeffs(coeffs)


@given(cyclo_nums(), cyclo_nums(), cyclo_nums())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(cyclo_nums(), cyclo_nums())
def test_conj_is_automorphism(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


def test_conj_examples():
    F = cyclo_field(5)
    assert F.from_rational(Fraction(3, 7)).conj() == Fraction(3, 7)
    assert F.zeta_pow(1).conj() == F.zeta_pow(4)
    x = F.zeta_pow(1) + F.zeta_pow(2) * 2
    assert x.conj() == F.zeta_pow(4) + F.zeta_pow(3) * 2


def test_canonical_idempotence():
    F = cyclo_field(9)
    x = F.from_coeffs([1, 2, 3, 0, 0, 1, 0, 4, 0, 0])  # longer than degree: folds
    y = F.from_coeffs(list(x.coeffs))
    assert x == y


def test_to_complex_matches_cmath():
    F = cyclo_field(4)
    assert abs(F.zeta_pow(1).to_complex() - 1j) < 1e-12
    F5 = cyclo_field(5)
    s = F5.zeta_pow(1) + F5.zeta_pow(4) - F5.zeta_pow(2) - F5.zeta_pow(3)
    assert abs(s.to_complex() - cmath.sqrt(5)) < 1e-9


@given(cyclo_nums(8), cyclo_nums(8))
def test_to_complex_is_multiplicative(a, b):
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9


def test_mul_zeta_shift():
    F = cyclo_field(15)
    x = F.from_coeffs([1, 2, 0, 3, 0, 0, 0, 1])
    for k in (1, 7, 14, 29):
        assert x.mul_zeta(k) == x * F.zeta_pow(k)


def test_serialization_roundtrip():
    F = cyclo_field(10)
    x = F.from_coeffs([Fraction(1, 3), -2, 0, Fraction(7, 2)])
    assert CycloNum.from_json(x.to_json()) == x


def test_embedding():
    F5 = cyclo_field(5)
    F20 = cyclo_field(20)
    x = F5.zeta_pow(2) + 3
    y = F5.embed(x, F20)
    assert y == F20.zeta_pow(8) + 3
    with pytest.raises(ValueError):
        F20.embed(F20.one(), F5)


# -- exact linear algebra --------------------------------------------------------

def _cofactor_det(m: CycloMatrix) -> CycloNum:
    n = m.nrows
    if n == 1:
        return m[0, 0]
    field = m.field
    acc = field.zero()
    rows = list(range(1, n))
    sign = 1
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        term = m[0, j] * _cofactor_det(m.submatrix(rows, cols))
        acc = acc + (term if sign > 0 else -term)
        sign = -sign
    return acc


def _random_matrix(F, rng, n, denbound=1):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            coeffs = [
                Fraction(rng.randint(-3, 3), rng.randint(1, denbound))
                for _ in range(F.degree)
            ]
            row.append(F.from_coeffs(coeffs))
        rows.append(row)
    return CycloMatrix.build(F, rows)


def test_det_identity_and_all_ones():
    F = cyclo_field(5)
    eye = CycloMatrix.build(F, [[F.one() if i == j else F.zero() for j in range(3)] for i in range(3)])
    assert det_exact(eye) == 1
    ones = CycloMatrix.build(F, [[F.one()] * 2, [F.one()] * 2])
    assert det_exact(ones).is_zero()


def test_det_matches_cofactor_oracle(rng):
    F = cyclo_field(5)
    for n in (1, 2, 3, 4):
        for _ in range(4):
            m = _random_matrix(F, rng, n, denbound=3)
            assert det_exact(m) == _cofactor_det(m)


def test_det_multiplicative(rng):
    F = cyclo_field(8)
    for _ in range(5):
        a = _random_matrix(F, rng, 3)
        b = _random_matrix(F, rng, 3)
        ab = CycloMatrix.build(
            F,
            [
                [
                    sum((a[i, k] * b[k, j] for k in range(3)), F.zero())
                    for j in range(3)
                ]
                for i in range(3)
            ],
        )
        assert det_exact(ab) == det_exact(a) * det_exact(b)


def test_bareiss_and_rational_paths_agree(rng):
    from cfmkit.cyclo import _det_bareiss, _det_rational

    F = cyclo_field(12)
    for n in (2, 3, 4):
        for _ in range(4):
            m = _random_matrix(F, rng, n, denbound=4)
            assert _det_bareiss(m) == _det_rational(m)


def test_det_not_square():
    F = cyclo_field(3)
    m = CycloMatrix.build(F, [[F.one(), F.zero()]])
    with pytest.raises(NotSquare):
        det_exact(m)


def test_solve_identity_and_diagonal():
    F = cyclo_field(5)
    eye = CycloMatrix.build(F, [[F.one() if i == j else F.zero() for j in range(2)] for i in range(2)])
    b = [F.zeta_pow(1), F.from_rational(3)]
    assert solve_exact(eye, b) == b
    diag = CycloMatrix.build(F, [[F.from_rational(2), F.zero()], [F.zero(), F.from_rational(3)]])
    xs = solve_exact(diag, [F.one(), F.one()])
    assert xs[0] == Fraction(1, 2) and xs[1] == Fraction(1, 3)


def test_solve_roundtrip(rng):
    F = cyclo_field(5)
    while True:
        m = _random_matrix(F, rng, 4)
        if not det_exact(m).is_zero():
            break
    x0 = [F.from_coeffs([rng.randint(-3, 3) for _ in range(F.degree)]) for _ in range(4)]
    b = [sum((m[i, j] * x0[j] for j in range(4)), F.zero()) for i in range(4)]
    assert solve_exact(m, b) == x0


def test_solve_singular():
    F = cyclo_field(3)
    m = CycloMatrix.build(F, [[F.one(), F.one()], [F.one(), F.one()]])
    with pytest.raises(Singular):
        solve_exact(m, [F.one(), F.zero()])


def test_det_under_row_permutations(rng):
    F = cyclo_field(7)
    m = _random_matrix(F, rng, 3)
    base = det_exact(m)
    for perm in permutations(range(3)):
        sign = 1
        p = list(perm)
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    sign = -sign
        permuted = m.submatrix(list(perm), [0, 1, 2])
        expect = base if sign > 0 else -base
        assert det_exact(permuted) == expect
