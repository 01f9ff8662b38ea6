"""Finite fields GF(p^n) with explicit tables.

A FieldCtx realizes one concrete model of GF(p^n): a monic irreducible
modulus polynomial, a fixed multiplicative generator, and a full
discrete-log table over the units.  Everything downstream (characters,
Gauss sums, compressed matrices) is deterministic because this model is:
rebuilding the same (p, n) always yields the same modulus, generator,
and orbit representatives.

Elements are polynomial residues, ordered by their integer encoding
value = sum(c_i * p^i) so the prime field sorts as 0, 1, ..., p-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cyclo import CycloField, cyclo_field
from .errors import (
    CapExceeded,
    DegreeZero,
    DivisionByZero,
    FieldMismatch,
    NotADivisor,
    NotASubfield,
    NotPrime,
    ZeroHasNoLog,
)
from .ntheory import is_prime, prime_factors

DEFAULT_CAP = 2**20


class FieldElt:
    """An element of a FieldCtx, as a coefficient tuple (constant first)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "FieldCtx", coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def value(self) -> int:
        """Integer encoding; also the canonical ordering key."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.ctx.p + c
        return v

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElt(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElt(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.ctx.p
        return FieldElt(self.ctx, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return self.ctx._mul(self, other)

    def inverse(self) -> "FieldElt":
        return self.ctx.inv(self)

    def __pow__(self, e: int) -> "FieldElt":
        return self.ctx.pow(self, e)

    def _check(self, other):
        if not isinstance(other, FieldElt) or other.ctx is not self.ctx:
            raise FieldMismatch("elements belong to different field contexts")

    def __eq__(self, other):
        if isinstance(other, FieldElt):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        self._check(other)
        return self.value < other.value

    def __repr__(self):
        return f"F{self.ctx.q}({self.value})"

    def to_json(self):
        return list(self.coeffs)


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup of index m in the unit group of `owner`."""

    owner: "FieldCtx"
    m: int
    order: int
    generator: FieldElt
    members: frozenset

    def __contains__(self, elt):
        return elt in self.members

    def sorted_members(self) -> list[FieldElt]:
        return sorted(self.members, key=lambda e: e.value)

    def __repr__(self):
        return f"Subgroup(q={self.owner.q}, index={self.m}, order={self.order})"


@dataclass(frozen=True)
class OrbitPartition:
    """H-orbits of the field (or of its units), with deterministic reps."""

    orbits: tuple  # tuple of frozensets
    reps: tuple  # value-smallest member of each orbit; {0} first if present
    includes_zero: bool


class FieldCtx:
    """A realized finite field GF(p^n).  Immutable after construction."""

    def __init__(self, p: int, n: int, modulus=None, cap: int = DEFAULT_CAP):
        if n < 1:
            raise DegreeZero("extension degree must be at least 1")
        if not is_prime(p):
            raise NotPrime(p)
        q = p**n
        if q > cap:
            raise CapExceeded(f"p^n = {q} exceeds the cap {cap}")
        self.p = p
        self.n = n
        self.q = q
        if modulus is None:
            modulus = _smallest_irreducible(p, n)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not _is_irreducible(modulus, p):
                raise ValueError("modulus is not irreducible over F_p")
        self.modulus = modulus
        self._zero = FieldElt(self, (0,) * n)
        self._one = FieldElt(self, (1,) + (0,) * (n - 1))
        self._build_tables()

    # -- construction internals ------------------------------------------------

    def _build_tables(self):
        self.g = self._find_generator()
        log_table: dict[int, int] = {}
        powers = []
        u = self._one
        for k in range(self.q - 1):
            log_table[u.value] = k
            powers.append(u)
            u = self._mul(u, self.g)
        self._log_table = log_table
        self._powers = powers

    def _find_generator(self) -> FieldElt:
        target = self.q - 1
        primes = prime_factors(target) if target > 1 else []
        for u in self.units():
            if all(not _eq_one(self.pow_nolog(u, target // ell)) for ell in primes):
                return u
        raise AssertionError("no generator found; field tables are corrupt")

    # -- element iteration ----------------------------------------------------------

    def element(self, coeffs) -> FieldElt:
        return FieldElt(self, tuple(c % self.p for c in coeffs))

    def from_value(self, v: int) -> FieldElt:
        coeffs = []
        for _ in range(self.n):
            coeffs.append(v % self.p)
            v //= self.p
        return FieldElt(self, tuple(coeffs))

    def from_int(self, k: int) -> FieldElt:
        """The image of the integer k in the prime subfield."""
        return FieldElt(self, (k % self.p,) + (0,) * (self.n - 1))

    def zero(self) -> FieldElt:
        return self._zero

    def one(self) -> FieldElt:
        return self._one

    def elements(self):
        """All q elements in value order."""
        for v in range(self.q):
            yield self.from_value(v)

    def units(self):
        for v in range(1, self.q):
            yield self.from_value(v)

    # -- arithmetic ----------------------------------------------------------------

    def _mul(self, a: FieldElt, b: FieldElt) -> FieldElt:
        p, n = self.p, self.n
        conv = [0] * (2 * n - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        conv[i + j] += ai * bj
        # reduce modulo the modulus polynomial
        mod = self.modulus
        for k in range(len(conv) - 1, n - 1, -1):
            c = conv[k] % p
            conv[k] = 0
            if c:
                for i in range(n):
                    conv[k - n + i] -= c * mod[i]
        return FieldElt(self, tuple(c % p for c in conv[:n]))

    def inv(self, a: FieldElt) -> FieldElt:
        if a.is_zero():
            raise DivisionByZero("inverse of zero field element")
        k = self.discrete_log(a)
        return self._powers[(self.q - 1 - k) % (self.q - 1)]

    def pow(self, a: FieldElt, e: int) -> FieldElt:
        if a.is_zero():
            if e == 0:
                return self._one
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return self._zero
        k = self._log_table.get(a.value)
        if k is not None:
            return self._powers[(k * e) % (self.q - 1)]
        return self.pow_nolog(a, e)

    def pow_nolog(self, a: FieldElt, e: int) -> FieldElt:
        """Square-and-multiply; used while the log table is being built."""
        if e < 0:
            raise ValueError("pow_nolog expects a nonnegative exponent")
        result = self._one
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return result

    def discrete_log(self, u: FieldElt) -> int:
        if u.is_zero():
            raise ZeroHasNoLog("0 has no discrete logarithm")
        return self._log_table[u.value]

    # -- traces ----------------------------------------------------------------------

    def abs_trace(self, x: FieldElt) -> int:
        """Tr(x) = x + x^p + ... + x^(q/p), as an integer in [0, p)."""
        acc = self._zero
        t = x
        for _ in range(self.n):
            acc = acc + t
            t = self.pow(t, self.p)
        assert not any(acc.coeffs[1:]), "trace left the prime subfield"
        return acc.coeffs[0]

    def rel_trace(self, x: FieldElt, subfield_degree: int) -> FieldElt:
        """Relative trace onto the subfield GF(p^k); requires k | n."""
        k = subfield_degree
        if k < 1 or self.n % k != 0:
            raise NotASubfield(k)
        step = self.p**k
        acc = self._zero
        t = x
        for _ in range(self.n // k):
            acc = acc + t
            t = self.pow(t, step)
        return acc

    def in_subfield(self, x: FieldElt, subfield_degree: int) -> bool:
        if self.n % subfield_degree != 0:
            raise NotASubfield(subfield_degree)
        return self.pow(x, self.p**subfield_degree) == x

    # -- subgroups and orbits ------------------------------------------------------------

    def subgroup_of_index(self, m: int) -> Subgroup:
        if m < 1 or (self.q - 1) % m != 0:
            raise NotADivisor(m)
        order = (self.q - 1) // m
        gen = self._powers[m % (self.q - 1)]
        members = frozenset(self._powers[(m * i) % (self.q - 1)] for i in range(order))
        return Subgroup(self, m, order, gen, members)

    def orbit_partition(self, H: Subgroup, include_zero: bool) -> OrbitPartition:
        if H.owner is not self:
            raise FieldMismatch("subgroup belongs to a different field")
        seen = set()
        orbits = []
        for u in self.units():
            if u.value in seen:
                continue
            orbit = frozenset(h * u for h in H.members)
            seen.update(e.value for e in orbit)
            orbits.append(orbit)
        orbits.sort(key=lambda orb: min(e.value for e in orb))
        if include_zero:
            orbits = [frozenset([self._zero])] + orbits
        reps = tuple(min(orb, key=lambda e: e.value) for orb in orbits)
        return OrbitPartition(tuple(orbits), reps, include_zero)

    # -- ambient scalar fields -------------------------------------------------------------

    def ambient_conductor(self) -> int:
        """Conductor housing every character value: p*(q-1), i.e. p for GF(2)."""
        return self.p * (self.q - 1)

    @property
    def cyclo(self) -> CycloField:
        return cyclo_field(self.ambient_conductor())

    def scalar_field(self, char_order: int = 0) -> CycloField:
        """Smallest conductor containing zeta_p and the given root order."""
        if char_order in (0, None):
            char_order = self.q - 1
        d = max(1, char_order)
        if (self.q - 1) % d != 0:
            raise NotADivisor(d)
        return cyclo_field(self.p * d if d > 1 else self.p)

    # -- misc ----------------------------------------------------------------------------------

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "generator": list(self.g.coeffs),
        }

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.n}), modulus={list(self.modulus)})"


def _eq_one(e: FieldElt) -> bool:
    return e.coeffs[0] == 1 and not any(e.coeffs[1:])


def construct_field(p: int, n: int, modulus=None, cap: int = DEFAULT_CAP) -> FieldCtx:
    """Build GF(p^n) with the canonical (or a pinned) modulus."""
    return FieldCtx(p, n, modulus=modulus, cap=cap)


# ---------------------------------------------------------------------------
# irreducibility over F_p (dense coefficient lists, constant first)
# ---------------------------------------------------------------------------

def _pmod_mul(a, b, mod, p):
    n = len(mod) - 1
    conv = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] = (conv[i + j] + ai * bj) % p
    for k in range(len(conv) - 1, n - 1, -1):
        c = conv[k]
        conv[k] = 0
        if c:
            for i in range(n):
                conv[k - n + i] = (conv[k - n + i] - c * mod[i]) % p
    out = conv[:n]
    return out + [0] * (n - len(out))

def _pmod_powx(e, mod, p):
    """x^e modulo `mod` over F_p."""
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = ([0, 1] + [0] * (n - 2))[:n]
    if n == 1:
        base = [(-mod[0]) % p]
    while e:
        if e & 1:
            result = _pmod_mul(result, base, mod, p)
        e >>= 1
        if e:
            base = _pmod_mul(base, base, mod, p)
    return result

def _poly_mod_fp(r, b, p):
    r = r[:]
    inv_lead = pow(b[-1], p - 2, p)
    while len(r) >= len(b):
        if r[-1] == 0:
            r.pop()
            continue
        factor = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        for i in range(len(b)):
            r[shift + i] = (r[shift + i] - factor * b[i]) % p
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r

def _poly_gcd_fp(a, b, p):
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v
    a = trim([c % p for c in a])
    b = trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod_fp(a, b, p)
    return a

def _is_irreducible(poly, p):
    """Rabin's test: x^(p^n) = x mod f and gcd(f, x^(p^(n/l)) - x) = 1."""
    n = len(poly) - 1
    if n == 0:
        return False
    if n == 1:
        return True
    xpn = _pmod_powx(p**n, poly, p)
    x_itself = ([0, 1] + [0] * (n - 2))[:n]
    if xpn != x_itself:
        return False
    for ell in prime_factors(n):
        xpk = _pmod_powx(p ** (n // ell), poly, p)
        diff = [(a - b) % p for a, b in zip(xpk, x_itself)]
        g = _poly_gcd_fp(diff, poly, p)
        if len(g) > 1:
            return False
    return True

def _smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over F_p,
    coefficients compared low-degree-first."""
    for lower in product(range(p), repeat=n):
        cand = tuple(lower) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")
