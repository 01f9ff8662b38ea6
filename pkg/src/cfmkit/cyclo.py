"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Scalars are represented canonically: a CycloNum is a rational-coefficient
polynomial in zeta_N reduced modulo the N-th cyclotomic polynomial Phi_N,
so equality (and in particular the zero test) is a plain coefficient
comparison with no tolerance anywhere.  Floating point appears only in
`to_complex`, which is display-only.

The module also carries the exact linear algebra used by the minor
scans: `det_exact` (fraction-free Bareiss over integral representatives,
with a rational-elimination fallback) and `solve_exact`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DivisionByZero, NotSquare, Singular
from .ntheory import divisors, euler_phi


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (constant term first)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num, den):
    """Division of integer polynomials known to be exact over Z."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c % lead != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        quot[k - dd] = q
        if q:
            for i in range(dd + 1):
                num[k - dd + i] -= q * den[i]
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, constant term first, monic."""
    if N < 1:
        raise ValueError("conductor must be >= 1")
    if N == 1:
        return (-1, 1)
    num = [0] * (N + 1)
    num[0], num[N] = -1, 1
    den = [1]
    for d in divisors(N):
        if d < N:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    return tuple(_poly_divmod_exact(num, den))


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclo_field(N: int) -> "CycloField":
    return CycloField(N)


class CycloField:
    """Q(zeta_N), with precomputed reduction data shared by its elements.

    Use the `cyclo_field` factory so fields are cached and element
    operations can assume a shared instance per conductor.
    """

    def __init__(self, N: int):
        self.N = N
        self.phi_poly = cyclotomic_poly(N)
        self.degree = len(self.phi_poly) - 1
        assert self.degree == euler_phi(N) or N == 1
        # x^k mod Phi_N for 0 <= k < N, as integer vectors of length `degree`.
        # zeta_N^N = 1, so any exponent folds through this table.
        top = [-c for c in self.phi_poly[:-1]]  # x^degree
        rows = []
        row = [0] * self.degree
        row[0] = 1
        for _ in range(N):
            rows.append(tuple(row))
            carry = row[-1]
            row = [0] + row[:-1]
            if carry:
                row = [a + carry * t for a, t in zip(row, top)]
        self.power_table = tuple(rows)
        self._zero = CycloNum(self, (0,) * self.degree)
        self._one = self.zeta_pow(0)

    # -- constructors ------------------------------------------------------

    def zero(self) -> "CycloNum":
        return self._zero

    def one(self) -> "CycloNum":
        return self._one

    def zeta_pow(self, k: int) -> "CycloNum":
        """Canonical representation of zeta_N**k."""
        return CycloNum(self, self.power_table[k % self.N])

    def from_rational(self, r) -> "CycloNum":
        coeffs = [0] * self.degree
        coeffs[0] = _norm_coeff(Fraction(r))
        return CycloNum(self, tuple(coeffs))

    def from_coeffs(self, coeffs) -> "CycloNum":
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            vec = [0] * self.degree
            for k, c in enumerate(coeffs):
                if c:
                    row = self.power_table[k % self.N]
                    for i, t in enumerate(row):
                        if t:
                            vec[i] += c * t
            coeffs = vec
        else:
            coeffs = coeffs + [0] * (self.degree - len(coeffs))
        return CycloNum(self, tuple(_norm_coeff(c) for c in coeffs))

    # -- hot-loop helpers ----------------------------------------------------

    def reduce_expdict(self, terms: dict) -> tuple:
        """Fold {exponent: coefficient} into a canonical coefficient tuple.

        Exponents are taken mod N; the common case of an exponent below
        the field degree is a direct write.
        """
        vec = [0] * self.degree
        deg, N, table = self.degree, self.N, self.power_table
        for k, c in terms.items():
            if not c:
                continue
            k %= N
            if k < deg:
                vec[k] += c
            else:
                row = table[k]
                for i, t in enumerate(row):
                    if t:
                        vec[i] += c * t
        return tuple(_norm_coeff(c) for c in vec)

    def expdict_to_cyclo(self, terms: dict) -> "CycloNum":
        return CycloNum(self, self.reduce_expdict(terms))

    def embed(self, x: "CycloNum", target: "CycloField") -> "CycloNum":
        """Map x through zeta_N -> zeta_M**(M/N); requires N | M."""
        if target is self:
            return x
        if target.N % self.N != 0:
            raise ValueError(f"no canonical embedding of Q(zeta_{self.N}) in Q(zeta_{target.N})")
        t = target.N // self.N
        return target.expdict_to_cyclo(
            {(t * i) % target.N: c for i, c in enumerate(x.coeffs) if c}
        )

    def __repr__(self):
        return f"CycloField(N={self.N}, degree={self.degree})"

    def __reduce__(self):
        return (cyclo_field, (self.N,))


def _norm_coeff(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class CycloNum:
    """An element of Q(zeta_N) in canonical reduced form.

    Coefficients are exact rationals (plain ints where integral); two
    elements are equal iff their coefficient tuples are equal.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.field.N != self.field.N:
                raise ValueError("conductor mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum(
            self.field,
            tuple(_norm_coeff(a + b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum(
            self.field,
            tuple(_norm_coeff(a - b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field.zero()
            return CycloNum(self.field, tuple(_norm_coeff(a * other) for a in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vec = _vec_mul(self.field, self.coeffs, other.coeffs)
        return CycloNum(self.field, tuple(_norm_coeff(c) for c in vec))

    __rmul__ = __mul__

    def mul_zeta(self, k: int) -> "CycloNum":
        """Multiply by zeta_N**k (index shift plus one reduction)."""
        field = self.field
        return field.expdict_to_cyclo(
            {(i + k) % field.N: c for i, c in enumerate(self.coeffs) if c}
        )

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        inv = _ring_inverse(self.field, self.coeffs)
        return CycloNum(self.field, tuple(_norm_coeff(c) for c in inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero scalar")
            return self * _frac_inv(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.from_rational(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structure -------------------------------------------------------------

    def conj(self) -> "CycloNum":
        """Complex conjugation: the Galois map zeta_N -> zeta_N**(N-1)."""
        field = self.field
        k = field.N - 1
        return field.expdict_to_cyclo(
            {(k * i) % field.N: c for i, c in enumerate(self.coeffs) if c}
        )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.coeffs[0])

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.field.N == other.field.N and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.N, tuple(Fraction(c) for c in self.coeffs)))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z^{i}")
            else:
                terms.append(f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"CycloNum(N={self.field.N}: {body})"

    # -- display only ------------------------------------------------------------

    def to_complex(self, precision_bits: int = 53) -> complex:
        """Approximate embedding at exp(2*pi*i/N).  Never used for decisions."""
        if precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")
        with mpmath.workprec(precision_bits):
            z = mpmath.mpc(0)
            for i, c in enumerate(self.coeffs):
                if c:
                    num, den = (c.numerator, c.denominator) if isinstance(c, Fraction) else (c, 1)
                    z += mpmath.mpf(num) / den * mpmath.expjpi(mpmath.mpf(2 * i) / self.field.N)
            return complex(float(z.real), float(z.imag))

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        fracs = [Fraction(c) for c in self.coeffs]
        return {
            "N": self.field.N,
            "num": [str(f.numerator) for f in fracs],
            "den": [str(f.denominator) for f in fracs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloNum":
        field = cyclo_field(int(data["N"]))
        coeffs = tuple(
            _norm_coeff(Fraction(int(n), int(d)))
            for n, d in zip(data["num"], data["den"])
        )
        if len(coeffs) != field.degree:
            raise ValueError("coefficient length does not match conductor degree")
        return cls(field, coeffs)


def _frac_inv(s):
    return Fraction(1, 1) / Fraction(s)


def _vec_mul(field: CycloField, a, b):
    """Product of two reduced coefficient vectors, reduced again."""
    deg = field.degree
    conv = [0] * (2 * deg - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
    vec = conv[:deg]
    table, N = field.power_table, field.N
    for k in range(deg, len(conv)):
        c = conv[k]
        if c:
            row = table[k % N]
            for i, t in enumerate(row):
                if t:
                    vec[i] += c * t
    return vec


def _ring_inverse(field: CycloField, coeffs):
    """Inverse modulo Phi_N via the extended Euclidean algorithm over Q[x].

    Phi_N is irreducible over Q, so the gcd with any nonzero residue is 1.
    """
    a = [Fraction(c) for c in coeffs]
    _poly_trim(a)
    b = [Fraction(c) for c in field.phi_poly]
    # invariants: s*a0 + t*b0 = a (mod things we do not track)
    s0, s1 = [Fraction(1)], []
    r0, r1 = a, b
    while r1:
        q, r = _frac_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
    # r0 is a nonzero constant gcd
    g = r0[0]
    inv = [c / g for c in s0]
    # reduce the Bezout coefficient mod Phi_N
    vec = [Fraction(0)] * field.degree
    table, N = field.power_table, field.N
    for k, c in enumerate(inv):
        if c:
            if k < field.degree:
                vec[k] += c
            else:
                row = table[k % N]
                for i, t in enumerate(row):
                    if t:
                        vec[i] += c * t
    return vec


def _frac_divmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q = c / lead
            quot[k - dd] = q
            for i in range(dd + 1):
                num[k - dd + i] -= q * den[i]
    return quot, _poly_trim(num)


def _frac_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _frac_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycloMatrix:
    """Row-major matrix of CycloNums over one CycloField.

    `row_labels`/`col_labels` are opaque tags carried through submatrix
    extraction so reports can name witnesses in the caller's terms.
    """

    field: CycloField
    entries: tuple
    row_labels: tuple = None
    col_labels: tuple = None

    @classmethod
    def build(cls, field, rows, row_labels=None, col_labels=None):
        entries = tuple(tuple(row) for row in rows)
        if entries:
            width = len(entries[0])
            if any(len(r) != width for r in entries):
                raise ValueError("ragged matrix")
        if row_labels is None:
            row_labels = tuple(range(len(entries)))
        if col_labels is None:
            col_labels = tuple(range(len(entries[0]) if entries else 0))
        return cls(field, entries, tuple(row_labels), tuple(col_labels))

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def submatrix(self, rows, cols) -> "CycloMatrix":
        return CycloMatrix(
            self.field,
            tuple(tuple(self.entries[r][c] for c in cols) for r in rows),
            tuple(self.row_labels[r] for r in rows),
            tuple(self.col_labels[c] for c in cols),
        )

    def transpose(self) -> "CycloMatrix":
        return CycloMatrix(
            self.field,
            tuple(tuple(self.entries[r][c] for r in range(self.nrows)) for c in range(self.ncols)),
            self.col_labels,
            self.row_labels,
        )

    def scale_rows_cols(self, row_factors=None, col_factors=None) -> "CycloMatrix":
        rf = row_factors or [self.field.one()] * self.nrows
        cf = col_factors or [self.field.one()] * self.ncols
        return CycloMatrix(
            self.field,
            tuple(
                tuple(self.entries[r][c] * rf[r] * cf[c] for c in range(self.ncols))
                for r in range(self.nrows)
            ),
            self.row_labels,
            self.col_labels,
        )

    def to_json(self) -> dict:
        return {
            "N": self.field.N,
            "rows": self.nrows,
            "cols": self.ncols,
            "row_labels": [str(l) for l in self.row_labels],
            "col_labels": [str(l) for l in self.col_labels],
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    def to_complex_csv(self, precision_bits: int = 53) -> str:
        lines = ["," + ",".join(str(l) for l in self.col_labels)]
        for label, row in zip(self.row_labels, self.entries):
            vals = []
            for e in row:
                z = e.to_complex(precision_bits)
                vals.append(f"{z.real:.12g}{z.imag:+.12g}j")
            lines.append(f"{label}," + ",".join(vals))
        return "\n".join(lines) + "\n"


class _InexactDivision(Exception):
    """Internal: a Bareiss division failed its integrality check."""


def det_exact(m: CycloMatrix) -> CycloNum:
    """Exact determinant.

    Fraction-free Bareiss elimination over integral representatives is
    attempted first; if any required exact division fails verification,
    the computation falls back to rational Gaussian elimination.  Both
    paths give the same answer (cross-checked in the test suite).
    """
    if m.nrows != m.ncols:
        raise NotSquare(f"{m.nrows}x{m.ncols} matrix has no determinant")
    if m.nrows == 0:
        return m.field.one()
    try:
        return _det_bareiss(m)
    except _InexactDivision:
        return _det_rational(m)


def _row_denominator_scale(field, rows):
    """Clear denominators rowwise; returns (int rows, total scale)."""
    scaled = []
    total = 1
    for row in rows:
        lcm = 1
        for e in row:
            for c in e.coeffs:
                if isinstance(c, Fraction):
                    d = c.denominator
                    g = _gcd(lcm, d)
                    lcm = lcm // g * d
        total *= lcm
        scaled.append([[int(c * lcm) for c in e.coeffs] for e in row])
    return scaled, total


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _det_bareiss(m: CycloMatrix) -> CycloNum:
    field = m.field
    n = m.nrows
    a, scale = _row_denominator_scale(field, m.entries)
    sign = 1
    prev = None  # previous pivot; None stands for 1
    for k in range(n - 1):
        if not any(a[k][k]):
            for i in range(k + 1, n):
                if any(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return field.zero()
        inv_prev = _ring_inverse(field, prev) if prev is not None else None
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = [
                    x - y
                    for x, y in zip(_vec_mul(field, pivot, a[i][j]), _vec_mul(field, a[i][k], a[k][j]))
                ]
                if inv_prev is not None:
                    q = _vec_mul(field, num, inv_prev)
                    out = []
                    for c in q:
                        c = Fraction(c) if not isinstance(c, Fraction) else c
                        if c.denominator != 1:
                            raise _InexactDivision
                        out.append(c.numerator)
                    num = out
                a[i][j] = num
            a[i][k] = [0] * field.degree
        prev = pivot
    det = CycloNum(field, tuple(_norm_coeff(sign * c) for c in a[n - 1][n - 1]))
    if scale != 1:
        det = det * Fraction(1, scale)
    return det


def _det_rational(m: CycloMatrix) -> CycloNum:
    field = m.field
    n = m.nrows
    a = [[list(e.coeffs) for e in row] for row in m.entries]
    sign = 1
    pivots = []
    for k in range(n):
        if not any(a[k][k]):
            for i in range(k + 1, n):
                if any(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return field.zero()
        pivot = a[k][k]
        pivots.append(pivot)
        inv_pivot = _ring_inverse(field, pivot)
        for i in range(k + 1, n):
            if any(a[i][k]):
                factor = _vec_mul(field, a[i][k], inv_pivot)
                for j in range(k, n):
                    prod = _vec_mul(field, factor, a[k][j])
                    a[i][j] = [x - y for x, y in zip(a[i][j], prod)]
    det = field.one() * sign
    for pivot in pivots:
        det = det * CycloNum(field, tuple(_norm_coeff(c) for c in pivot))
    return det


def solve_exact(m: CycloMatrix, rhs) -> list:
    """Solve M x = b exactly; raises Singular when M is not invertible.

    Forward elimination is division-free (rows are cross-multiplied), so
    integer inputs stay integer until the one ring inversion per variable
    in back substitution.
    """
    if m.nrows != m.ncols:
        raise NotSquare("solve_exact needs a square matrix")
    field = m.field
    n = m.nrows
    a = [[list(e.coeffs) for e in row] + [list(rhs[i].coeffs)] for i, row in enumerate(m.entries)]
    for k in range(n):
        if not any(a[k][k]):
            for i in range(k + 1, n):
                if any(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise Singular("matrix is singular")
        pivot = a[k][k]
        for i in range(k + 1, n):
            if any(a[i][k]):
                factor = a[i][k]
                for j in range(k, n + 1):
                    scaled = _vec_mul(field, pivot, a[i][j])
                    prod = _vec_mul(field, factor, a[k][j])
                    a[i][j] = [x - y for x, y in zip(scaled, prod)]
    xs = [None] * n
    for k in range(n - 1, -1, -1):
        acc = a[k][n]
        for j in range(k + 1, n):
            prod = _vec_mul(field, a[k][j], xs[j])
            acc = [x - y for x, y in zip(acc, prod)]
        xs[k] = _vec_mul(field, acc, _ring_inverse(field, a[k][k]))
    return [CycloNum(field, tuple(_norm_coeff(c) for c in x)) for x in xs]
