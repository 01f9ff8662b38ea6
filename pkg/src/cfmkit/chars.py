"""Characters of finite fields and their Gauss / Jacobi sums.

All values are exact CycloNums in the ambient field Q(zeta_N) of the
underlying FieldCtx, N = p*(q-1).  The root-of-unity embeddings are
fixed once:

    zeta_p     = zeta_N ** (q-1)      (canonical: exp(2*pi*i/p))
    zeta_(q-1) = zeta_N ** p          (canonical: exp(2*pi*i/(q-1)))

Additive characters are indexed by their twist a (eps_a(x) =
zeta_p**Tr(a*x)); multiplicative characters by their exponent j against
the context's fixed generator g (omega^j(g^k) = zeta_(q-1)**(j*k));
subgroup characters by their exponent t against g**m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cyclo import CycloNum
from .errors import NotAUnit, NotInSubgroup
from .field import FieldCtx, FieldElt, Subgroup


@dataclass(frozen=True)
class AdditiveChar:
    """eps_a: x -> zeta_p ** Tr(a*x)."""

    field: FieldCtx
    a: FieldElt

    def __call__(self, x: FieldElt) -> CycloNum:
        ctx = self.field
        e = (ctx.q - 1) * ctx.abs_trace(self.a * x)
        return ctx.cyclo.zeta_pow(e)

    def exponent_at(self, x: FieldElt) -> int:
        """Exponent of zeta_N for eps_a(x); the hot-loop form of __call__."""
        ctx = self.field
        return ((ctx.q - 1) * ctx.abs_trace(self.a * x)) % ctx.cyclo.N

    def is_trivial(self) -> bool:
        return self.a.is_zero()


def additive_char(field: FieldCtx, a=None) -> AdditiveChar:
    """eps_a; the canonical character eps_1 when a is omitted."""
    return AdditiveChar(field, field.one() if a is None else a)


@dataclass(frozen=True)
class MultChar:
    """omega^j on the unit group: g^k -> zeta_(q-1)^(j*k)."""

    field: FieldCtx
    j: int

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % max(self.field.q - 1, 1))

    def __call__(self, u: FieldElt) -> CycloNum:
        ctx = self.field
        if u.is_zero():
            raise NotAUnit("multiplicative characters are defined on units only")
        k = ctx.discrete_log(u)
        return ctx.cyclo.zeta_pow(ctx.p * self.j * k)

    def order(self) -> int:
        m = self.field.q - 1
        return m // gcd(self.j, m) if self.j else 1

    def is_trivial(self) -> bool:
        return self.j == 0

    def conj(self) -> "MultChar":
        return MultChar(self.field, -self.j)

    def __mul__(self, other: "MultChar") -> "MultChar":
        return MultChar(self.field, self.j + other.j)

    def restrict(self, H: Subgroup) -> "SubgroupChar":
        return SubgroupChar(H, self.j % H.order)


def quadratic_char(field: FieldCtx) -> MultChar:
    if (field.q - 1) % 2 != 0:
        raise ValueError("no quadratic character: the unit group has odd order")
    return MultChar(field, (field.q - 1) // 2)


@dataclass(frozen=True)
class SubgroupChar:
    """chi on H = <g^m>: g^(m*i) -> zeta_|H|^(t*i).

    This is the central symmetry object; chi determines H.
    """

    H: Subgroup
    t: int

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % max(self.H.order, 1))

    @property
    def field(self) -> FieldCtx:
        return self.H.owner

    def __call__(self, h: FieldElt) -> CycloNum:
        return self.field.cyclo.zeta_pow(self.exponent_at(h))

    def exponent_at(self, h: FieldElt) -> int:
        """Exponent of zeta_N for chi(h)."""
        ctx = self.field
        if h not in self.H:
            raise NotInSubgroup(f"{h} is not a member of {self.H}")
        i = ctx.discrete_log(h) // self.H.m
        # zeta_|H| = zeta_(q-1)^m = zeta_N^(p*m)
        return (ctx.p * self.H.m * self.t * i) % ctx.cyclo.N

    def order(self) -> int:
        M = self.H.order
        return M // gcd(self.t, M) if self.t else 1

    def is_trivial(self) -> bool:
        return self.t == 0

    def conj(self) -> "SubgroupChar":
        return SubgroupChar(self.H, -self.t)

    def describe(self) -> dict:
        return {"q": self.field.q, "index": self.H.m, "t": self.t, "order": self.order()}


def extensions(chi: SubgroupChar) -> list[MultChar]:
    """The index-many characters of the full unit group restricting to chi."""
    ctx = chi.field
    M = chi.H.order
    out = [MultChar(ctx, chi.t + k * M) for k in range(chi.H.m)]
    assert all(phi.restrict(chi.H) == chi for phi in out)
    return out


def gauss_sum(phi: MultChar) -> CycloNum:
    """G(phi) = sum over units of eps(a) * phi(a), exactly."""
    ctx = phi.field
    cyclo = ctx.cyclo
    N = cyclo.N
    eps = additive_char(ctx)
    terms: dict[int, int] = {}
    u = ctx.one()
    for k in range(ctx.q - 1):
        e = (eps.exponent_at(u) + ctx.p * phi.j * k) % N
        terms[e] = terms.get(e, 0) + 1
        u = u * ctx.g
    return cyclo.expdict_to_cyclo(terms)


def jacobi_sum(chi: MultChar, eta: MultChar) -> CycloNum:
    """J(chi, eta) = sum over a not in {0, 1} of chi(a) * eta(1-a)."""
    ctx = chi.field
    if eta.field is not ctx:
        raise ValueError("characters live on different fields")
    cyclo = ctx.cyclo
    N = cyclo.N
    one = ctx.one()
    terms: dict[int, int] = {}
    for a in ctx.units():
        b = one - a
        if b.is_zero():
            continue
        e = (ctx.p * (chi.j * ctx.discrete_log(a) + eta.j * ctx.discrete_log(b))) % N
        terms[e] = terms.get(e, 0) + 1
    return cyclo.expdict_to_cyclo(terms)
