"""The group ring C[F_q] with exact cyclotomic coefficients.

Elements are stored sparsely but are semantically total: an omitted
coefficient is exactly zero.  Spectra are indexed by the twist a in F_q
standing for the additive character eps_a, which realizes the group
isomorphism between F_q and its character group and keeps the set
algebra on spectral supports concrete.
"""

from __future__ import annotations

from fractions import Fraction

from .chars import SubgroupChar
from .cyclo import CycloField, CycloNum
from .errors import FieldMismatch
from .field import FieldCtx, FieldElt, Subgroup


def _clean(coeffs: dict) -> dict:
    return {a: c for a, c in coeffs.items() if not c.is_zero()}


class GroupRingElt:
    """f = sum of f_a [a] with CycloNum coefficients."""

    __slots__ = ("field", "scalars", "coeffs")

    def __init__(self, field: FieldCtx, coeffs: dict, scalars: CycloField | None = None):
        self.field = field
        self.scalars = scalars if scalars is not None else field.cyclo
        self.coeffs = _clean(coeffs)

    @classmethod
    def zero(cls, field: FieldCtx, scalars=None) -> "GroupRingElt":
        return cls(field, {}, scalars)

    @classmethod
    def delta(cls, field: FieldCtx, a: FieldElt, scalars=None) -> "GroupRingElt":
        scalars = scalars if scalars is not None else field.cyclo
        return cls(field, {a: scalars.one()}, scalars)

    def coeff(self, a: FieldElt) -> CycloNum:
        return self.coeffs.get(a, self.scalars.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "GroupRingElt"):
        if other.field is not self.field:
            raise FieldMismatch("group-ring elements over different fields")
        if other.scalars is not self.scalars:
            raise FieldMismatch("group-ring elements with different scalar fields")

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._check(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, self.scalars.zero()) + c
        return GroupRingElt(self.field, out, self.scalars)

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.field, {a: -c for a, c in self.coeffs.items()}, self.scalars)

    def scale(self, s) -> "GroupRingElt":
        return GroupRingElt(self.field, {a: c * s for a, c in self.coeffs.items()}, self.scalars)

    def h_dot(self, h: FieldElt) -> "GroupRingElt":
        """The multiplication action: h . f = sum f_a [h a]."""
        return GroupRingElt(self.field, {h * a: c for a, c in self.coeffs.items()}, self.scalars)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElt):
            return NotImplemented
        return (
            self.field is other.field
            and self.scalars.N == other.scalars.N
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = ", ".join(f"[{a.value}]*{c!r}" for a, c in sorted(self.coeffs.items(), key=lambda t: t[0].value))
        return f"GroupRingElt({terms or '0'})"

    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def support_restricted(self, R) -> frozenset:
        return self.support() & frozenset(R)

    def to_json(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda t: t[0].value)
        return {
            "field": self.field.descriptor(),
            "scalar_conductor": self.scalars.N,
            "coeffs": [[a.to_json(), c.to_json()] for a, c in items],
        }

    @classmethod
    def from_json(cls, data: dict, field: FieldCtx) -> "GroupRingElt":
        from .cyclo import cyclo_field

        scalars = cyclo_field(int(data["scalar_conductor"]))
        coeffs = {
            field.element(tuple(ac)): CycloNum.from_json(cc)
            for ac, cc in data["coeffs"]
        }
        return cls(field, coeffs, scalars)


class SpectrumElt:
    """Fourier-side function, indexed by the twist a standing for eps_a."""

    __slots__ = ("field", "scalars", "values")

    def __init__(self, field: FieldCtx, values: dict, scalars: CycloField | None = None):
        self.field = field
        self.scalars = scalars if scalars is not None else field.cyclo
        self.values = _clean(values)

    def value(self, a: FieldElt) -> CycloNum:
        return self.values.get(a, self.scalars.zero())

    def support(self) -> frozenset:
        return frozenset(self.values)

    def support_restricted(self, R) -> frozenset:
        return self.support() & frozenset(R)

    def pointwise_mul(self, other: "SpectrumElt") -> "SpectrumElt":
        common = self.support() & other.support()
        return SpectrumElt(
            self.field,
            {a: self.values[a] * other.values[a] for a in common},
            self.scalars,
        )

    def __eq__(self, other):
        if not isinstance(other, SpectrumElt):
            return NotImplemented
        return (
            self.field is other.field
            and self.scalars.N == other.scalars.N
            and self.values == other.values
        )

    def __repr__(self):
        vals = ", ".join(f"eps_{a.value}: {c!r}" for a, c in sorted(self.values.items(), key=lambda t: t[0].value))
        return f"SpectrumElt({vals or '0'})"

    def to_json(self) -> dict:
        items = sorted(self.values.items(), key=lambda t: t[0].value)
        return {
            "field": self.field.descriptor(),
            "scalar_conductor": self.scalars.N,
            "values": [[a.to_json(), c.to_json()] for a, c in items],
        }

    @classmethod
    def from_json(cls, data: dict, field: FieldCtx) -> "SpectrumElt":
        from .cyclo import cyclo_field

        scalars = cyclo_field(int(data["scalar_conductor"]))
        values = {
            field.element(tuple(ac)): CycloNum.from_json(cc)
            for ac, cc in data["values"]
        }
        return cls(field, values, scalars)


# ---------------------------------------------------------------------------
# convolution and transforms
# ---------------------------------------------------------------------------

def convolve(f: GroupRingElt, g: GroupRingElt) -> GroupRingElt:
    """(fg)_a = sum over b of f_b g_(a-b)."""
    f._check(g)
    out: dict = {}
    zero = f.scalars.zero()
    for b, fb in f.coeffs.items():
        for c, gc in g.coeffs.items():
            a = b + c
            out[a] = out.get(a, zero) + fb * gc
    return GroupRingElt(f.field, out, f.scalars)


def _zeta_p_step(ctx: FieldCtx, scalars: CycloField) -> int:
    """Exponent k with zeta_p = zeta_(scalars.N)^k."""
    N = scalars.N
    if N % ctx.p != 0:
        raise ValueError("scalar field does not contain zeta_p")
    return N // ctx.p


def fourier(f: GroupRingElt) -> SpectrumElt:
    """f^(eps_a) = eps_a(f), computed exactly for every twist a."""
    ctx = f.field
    scalars = f.scalars
    step = _zeta_p_step(ctx, scalars)
    N = scalars.N
    values: dict = {}
    items = [(b, fb) for b, fb in f.coeffs.items()]
    for a in ctx.elements():
        terms: dict[int, object] = {}
        for b, fb in items:
            e = step * ctx.abs_trace(a * b) % N
            for i, c in enumerate(fb.coeffs):
                if c:
                    k = (i + e) % N
                    terms[k] = terms.get(k, 0) + c
        v = scalars.expdict_to_cyclo(terms)
        if not v.is_zero():
            values[a] = v
    return SpectrumElt(ctx, values, scalars)


def inv_fourier(F: SpectrumElt) -> GroupRingElt:
    """f_a = (1/q) sum over twists c of conj(eps_c(a)) F(eps_c)."""
    ctx = F.field
    scalars = F.scalars
    step = _zeta_p_step(ctx, scalars)
    N = scalars.N
    coeffs: dict = {}
    items = list(F.values.items())
    q = ctx.q
    for a in ctx.elements():
        terms: dict[int, object] = {}
        for c, Fc in items:
            e = (-step * ctx.abs_trace(c * a)) % N
            for i, cc in enumerate(Fc.coeffs):
                if cc:
                    k = (i + e) % N
                    terms[k] = terms.get(k, 0) + cc
        v = scalars.expdict_to_cyclo({k: Fraction(c, q) for k, c in terms.items()})
        if not v.is_zero():
            coeffs[a] = v
    return GroupRingElt(ctx, coeffs, scalars)


# ---------------------------------------------------------------------------
# chi-symmetry
# ---------------------------------------------------------------------------

def is_chi_symmetric(f: GroupRingElt, chi: SubgroupChar) -> bool:
    """Exact test of f_(h a) = chi(h) f_a for all h in H, a in F_q."""
    ctx = f.field
    if chi.field is not ctx:
        raise FieldMismatch("character lives on a different field")
    for h in chi.H.members:
        ch = _chi_value(chi, h, f.scalars)
        # iterating nonzero coefficients suffices: a nonzero f_(h a) above a
        # zero f_a fails the check at h^-1, which also runs through H
        for a, fa in f.coeffs.items():
            if f.coeff(h * a) != ch * fa:
                return False
    return True


def is_chi_symmetric_spectral(F: SpectrumElt, chi: SubgroupChar) -> bool:
    """Dual test: chi(h) F(eps_(h a)) = F(eps_a) for all h, a."""
    ctx = F.field
    for h in chi.H.members:
        ch = _chi_value(chi, h, F.scalars)
        for a in ctx.elements():
            if ch * F.value(h * a) != F.value(a):
                return False
    return True


def _chi_value(chi: SubgroupChar, h: FieldElt, scalars: CycloField) -> CycloNum:
    ambient = chi.field.cyclo
    e = chi.exponent_at(h)
    if scalars.N == ambient.N:
        return scalars.zeta_pow(e)
    # chi values are |H|-th roots; rescale the exponent into `scalars`
    if (e * scalars.N) % ambient.N != 0:
        raise ValueError("scalar field too small for this character")
    return scalars.zeta_pow(e * scalars.N // ambient.N)


def u_basis(chi: SubgroupChar, a: FieldElt, scalars: CycloField | None = None) -> GroupRingElt:
    """u_(chi,a) = sum over h in H of chi(h) [h a]."""
    ctx = chi.field
    scalars = scalars if scalars is not None else ctx.cyclo
    coeffs: dict = {}
    zero = scalars.zero()
    for h in chi.H.members:
        coeffs[h * a] = coeffs.get(h * a, zero) + _chi_value(chi, h, scalars)
    return GroupRingElt(ctx, coeffs, scalars)


def symmetrize(f: GroupRingElt, chi: SubgroupChar) -> GroupRingElt:
    """Projection of f onto the chi-symmetric subspace.

    Averages the symmetry operators f -> chi(h) (h . f); each of them
    fixes the chi-symmetric subspace pointwise, so the average is the
    identity there (idempotence) and lands in it from anywhere.
    """
    ctx = f.field
    acc = GroupRingElt.zero(ctx, f.scalars)
    for h in chi.H.members:
        acc = acc + f.h_dot(h).scale(_chi_value(chi, h, f.scalars))
    return acc.scale(Fraction(1, chi.H.order))


def random_chi_symmetric(chi: SubgroupChar, rng, box: int = 9,
                         scalars: CycloField | None = None) -> GroupRingElt:
    """Random nonzero chi-symmetric element: integer draws on orbit
    representatives, then symmetrized (scaled back to integer coords)."""
    ctx = chi.field
    part = ctx.orbit_partition(chi.H, include_zero=chi.is_trivial())
    scalars = scalars if scalars is not None else ctx.cyclo
    while True:
        draws = {r: rng.randint(-box, box) for r in part.reps}
        if not any(draws.values()):
            continue
        base = GroupRingElt(
            ctx,
            {r: scalars.from_rational(c) for r, c in draws.items() if c},
            scalars,
        )
        f = symmetrize(base, chi).scale(chi.H.order)
        if not f.is_zero():
            return f
