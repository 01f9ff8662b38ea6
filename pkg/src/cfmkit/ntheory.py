"""Small integer number theory: primality, factoring, orders.

Everything here is deterministic and sized for desk-scale inputs (the
field cap is 2**20, conductors stay in the few-thousands, and the
modular-screen primes are 31-bit).
"""

from __future__ import annotations

import math

# Witnesses that make Miller-Rabin deterministic for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    fac = factorize(n)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def multiplicative_order(a: int, modulus: int) -> int:
    """Order of a modulo `modulus`; requires gcd(a, modulus) == 1."""
    if math.gcd(a, modulus) != 1:
        raise ValueError("element is not a unit")
    group = _carmichael_like_order(modulus)
    order = group
    for p in prime_factors(group):
        while order % p == 0 and pow(a, order // p, modulus) == 1:
            order //= p
    return order


def _carmichael_like_order(modulus: int) -> int:
    # Euler phi is a valid exponent multiple for any modulus.
    phi = 1
    for p, e in factorize(modulus).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi
