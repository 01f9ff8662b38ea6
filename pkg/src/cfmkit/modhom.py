"""Exact nonzero certificates via ring maps Q(zeta_N) -> F_r.

Pick a prime r = 1 (mod N) and an element w of multiplicative order
exactly N in F_r; then zeta_N -> w extends to a ring homomorphism on
every element whose coefficient denominators are invertible mod r.  A
nonzero image certifies a nonzero element outright; a zero image decides
nothing and callers must confirm with exact arithmetic.

This one-sided screen is what makes exhaustive minor scans and bulk
support counts cheap without ever weakening exactness.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloNum
from .ntheory import is_prime, prime_factors

_KERNEL_PRIME_FLOOR = 1 << 30
_KERNEL_PRIME_CEIL = 1 << 31  # keeps kernel products inside int64


class ZetaHom:
    """zeta_N -> w over F_r, with the full power table of w cached."""

    __slots__ = ("N", "r", "w", "wpow")

    def __init__(self, N: int, r: int, w: int):
        self.N = N
        self.r = r
        self.w = w
        pows = [1] * N
        for i in range(1, N):
            pows[i] = pows[i - 1] * w % r
        self.wpow = pows

    def image(self, x: CycloNum) -> int:
        """Image of a canonical element; raises if a denominator hits r."""
        r, wpow = self.r, self.wpow
        acc = 0
        for i, c in enumerate(x.coeffs):
            if c:
                acc += self._coeff(c) * wpow[i]
        return acc % r

    def image_expdict(self, terms: dict) -> int:
        r, wpow, N = self.r, self.wpow, self.N
        acc = 0
        for k, c in terms.items():
            if c:
                acc += self._coeff(c) * wpow[k % N]
        return acc % r

    def _coeff(self, c) -> int:
        if isinstance(c, Fraction):
            den = c.denominator
            if den == 1:
                return c.numerator
            if den % self.r == 0:
                raise ValueError("denominator not invertible modulo the screen prime")
            return c.numerator * pow(den, self.r - 2, self.r)
        return c


@lru_cache(maxsize=None)
def zeta_hom(N: int, skip: int = 0) -> ZetaHom:
    """Deterministic ZetaHom for conductor N; `skip` advances to later primes.

    Primes are searched upward from 2**30, so for every desk-scale
    conductor the result fits the compiled kernel's 31-bit requirement;
    larger conductors simply yield larger primes and take the pure path.
    """
    found = 0
    k = max(_KERNEL_PRIME_FLOOR // N, 1)
    while True:
        r = k * N + 1
        if is_prime(r):
            if found == skip:
                w = _element_of_order(N, r)
                return ZetaHom(N, r, w)
            found += 1
        k += 1


def _element_of_order(N: int, r: int) -> int:
    ells = prime_factors(N)
    c = 2
    while True:
        w = pow(c, (r - 1) // N, r)
        if w != 1 or N == 1:
            if all(pow(w, N // ell, r) != 1 for ell in ells):
                return w
        c += 1


def hom_for_denominators(N: int, denominators) -> ZetaHom:
    """A ZetaHom whose prime avoids every listed denominator."""
    skip = 0
    while True:
        hom = zeta_hom(N, skip)
        if all(d % hom.r != 0 for d in denominators):
            return hom
        skip += 1


def collect_denominators(entries) -> set[int]:
    dens = set()
    for e in entries:
        for c in e.coeffs:
            if isinstance(c, Fraction) and c.denominator != 1:
                dens.add(c.denominator)
    return dens
