"""First-order differential calculus on A(p;q) and its restriction to B(p;q).

One-forms are stored left-normal as a- w- + a0 w0 + a+ w+ with a_i in
A(p;q); the right action is w_i a = sigma_i(a) w_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .algebra import (
    AlgElem,
    AlgebraCtx,
    BElem,
    NotRegularError,
    a_basis,
    star,
    theta,
)
from .derivations import DEFAULT_PARAMS, DerivParams, derivations, sigma
from .scalars import Q, Scalar

SLOTS = ("minus", "zero", "plus")
_SIGMA_TAG = {"minus": "minus", "zero": "zero", "plus": "plus"}
_NAMES = {"minus": "w-", "zero": "w0", "plus": "w+"}


class CalculusError(ValueError):
    pass


class OmegaElem:
    """a- w- + a0 w0 + a+ w+ in the free left module with basis w-, w0, w+."""

    __slots__ = ("minus", "zero", "plus")

    def __init__(self, minus: AlgElem, zero: AlgElem, plus: AlgElem):
        self.minus = minus
        self.zero = zero
        self.plus = plus

    @classmethod
    def basis(cls, ctx: AlgebraCtx, slot: str) -> "OmegaElem":
        comps = {s: ctx.zero for s in SLOTS}
        comps[slot] = ctx.one
        return cls(**comps)

    @classmethod
    def zero_form(cls, ctx: AlgebraCtx) -> "OmegaElem":
        return cls(ctx.zero, ctx.zero, ctx.zero)

    @property
    def ctx(self) -> AlgebraCtx:
        return self.minus.ctx

    def components(self):
        return (self.minus, self.zero, self.plus)

    def __getitem__(self, slot: str) -> AlgElem:
        return getattr(self, slot)

    def __add__(self, other: "OmegaElem") -> "OmegaElem":
        return OmegaElem(self.minus + other.minus, self.zero + other.zero, self.plus + other.plus)

    def __neg__(self):
        return OmegaElem(-self.minus, -self.zero, -self.plus)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "OmegaElem":
        return OmegaElem(self.minus.scale(c), self.zero.scale(c), self.plus.scale(c))

    def left(self, a: AlgElem) -> "OmegaElem":
        """a * w."""
        return OmegaElem(a * self.minus, a * self.zero, a * self.plus)

    def right(self, a: AlgElem) -> "OmegaElem":
        return right_act(self, a)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, AlgElem):
            return self.left(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, AlgElem):
            return right_act(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, OmegaElem):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def is_zero(self) -> bool:
        return not (self.minus or self.zero or self.plus)

    def __str__(self):
        parts = []
        for slot in SLOTS:
            a = self[slot]
            if a:
                parts.append(f"({a})*{_NAMES[slot]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"OmegaElem({str(self)!r})"


def right_act(w: OmegaElem, a: AlgElem) -> OmegaElem:
    """w * a, using w_i a = sigma_i(a) w_i."""
    return OmegaElem(
        w.minus * sigma("minus", a),
        w.zero * sigma("zero", a),
        w.plus * sigma("plus", a),
    )


def d(a: AlgElem, params: DerivParams = DEFAULT_PARAMS) -> OmegaElem:
    ds = derivations(a.ctx, params)
    return OmegaElem(ds.dminus(a), ds.d0(a), ds.dplus(a))


def star_omega(w: OmegaElem, params: DerivParams = DEFAULT_PARAMS) -> OmegaElem:
    """(a w_i)* = w_i* a*, with w+* = w-, w-* = w+, w0* = -w0."""
    if not params.star_compatible:
        raise CalculusError("derivation parameters are not star-compatible")
    return OmegaElem(
        sigma("minus", star(w.plus)),
        -sigma("zero", star(w.zero)),
        sigma("plus", star(w.minus)),
    )


def horizontal(w: OmegaElem) -> OmegaElem:
    return OmegaElem(w.minus, w.ctx.zero, w.plus)


def restrict_to_B(w: OmegaElem) -> Tuple[AlgElem, AlgElem]:
    """Split a one-form on B into its A_2 w- and A_-2 w+ coefficients."""
    if w.zero or not w.minus.is_homogeneous(2) or not w.plus.is_homogeneous(-2):
        raise CalculusError("not in restricted calculus")
    return w.minus, w.plus


# ---------------------------------------------------------------------------
# density witnesses


@dataclass
class DensityWitness:
    """Pairs (a_i, b_i) with sum a_i d(b_i) equal to the target basis form."""

    target: str
    pairs: List[Tuple[AlgElem, AlgElem]]

    def evaluate(self, params: DerivParams = DEFAULT_PARAMS) -> OmegaElem:
        ctx = self.pairs[0][0].ctx
        out = OmegaElem.zero_form(ctx)
        for a, b in self.pairs:
            out = out + d(b, params).left(a)
        return out


class _Combo:
    """Formal sum of u * d(g) * v (u, v, g in A) with scalar weights folded in u."""

    def __init__(self, terms=()):
        self.terms = list(terms)

    @classmethod
    def one(cls, u, g, v):
        return cls([(u, g, v)])

    def __add__(self, other):
        return _Combo(self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return _Combo([(u.scale(c), g, v) for u, g, v in self.terms])

    def left(self, a: AlgElem):
        return _Combo([(a * u, g, v) for u, g, v in self.terms])

    def pairs(self):
        # u d(g) v = u d(g v) - u g d(v)
        out = []
        for u, g, v in self.terms:
            if not u:
                continue
            out.append((u, g * v))
            if v.scalar_part() is None:
                out.append((-(u * g), v))
        return out

    def evaluate(self, params):
        ctx = self.terms[0][0].ctx
        out = OmegaElem.zero_form(ctx)
        for u, g, v in self.terms:
            out = out + right_act(d(g, params).left(u), v)
        return out


def _require_regular(ctx: AlgebraCtx):
    if not ctx.regular:
        raise NotRegularError()


def _omega0_combo(ctx: AlgebraCtx, params: DerivParams) -> _Combo:
    one = ctx.one
    xp, xm, zp, zm = (ctx.gen(g) for g in ("x+", "x-", "z+", "z-"))
    a0 = params.alpha0
    p = ctx.p
    if p.degree == 1:
        # x- d(x+) - q^2 lam z- d(z+) = alpha0 mu w0
        mu, lam = p[0], p[1]
        combo = _Combo.one(xm, xp, one) - _Combo.one(zm.scale(Q * Q * lam), zp, one)
        return combo.scale((a0 * mu).inverse())
    if p.degree <= 0:
        # p = mu constant: x- d(x+) = alpha0 mu w0
        return _Combo.one(xm, xp, one).scale((a0 * p[0]).inverse())
    sep = ctx.separability
    c = ctx.zpoly(ctx.c)
    # z w0 = (z- d(z+) - d(z+) z-) / ((1 - q^-2) alpha0)
    z_w0 = (_Combo.one(zm, zp, one) - _Combo.one(one, zp, zm)).scale(
        ((1 - Scalar.qpow(-2)) * a0).inverse())
    # p w0 from d(x+)x- - q^-1 c z- d(z+) + q^2 x+ d(x-) - q z+ d(z-) c
    p_w0 = (_Combo.one(one, xp, xm)
            - _Combo.one((c * zm).scale(Scalar.qpow(-1)), zp, one)
            + _Combo.one(xp.scale(Q * Q), xm, one)
            - _Combo.one(zp.scale(Q), zm, c)).scale(((Scalar.qpow(-2) - 1) * a0).inverse())
    return z_w0.left(ctx.zpoly(sep.f0)) + p_w0.left(ctx.zpoly(sep.g0))


def density_witness(target: str, ctx: AlgebraCtx,
                    params: DerivParams = DEFAULT_PARAMS) -> DensityWitness:
    """Explicit a_i, b_i with sum a_i d(b_i) equal to w-, w0 or w+."""
    slot = {"w-": "minus", "w0": "zero", "w+": "plus"}.get(target, target)
    if slot not in SLOTS:
        raise CalculusError(f"unknown basis form {target!r}")
    _require_regular(ctx)
    w0 = _omega0_combo(ctx, params)
    if slot == "zero":
        combo = w0
    else:
        combo = _omega_pm_combo(ctx, params, slot, w0)
    wit = DensityWitness(_NAMES[slot], combo.pairs())
    if wit.evaluate(params) != OmegaElem.basis(ctx, slot):
        raise CalculusError(f"density witness for {target} failed to evaluate")
    return wit


def _omega_pm_combo(ctx, params, slot, w0: _Combo) -> _Combo:
    one = ctx.one
    xp, xm, zp, zm = (ctx.gen(g) for g in ("x+", "x-", "z+", "z-"))
    a0 = params.alpha0
    sep = ctx.separability
    if slot == "plus":
        ap = params.alpha_plus.inverse()
        # c z- w+ = (d(x+) - alpha0 x+ w0)/alpha+ ; x- w+ = (d(z+) - alpha0 z+ w0)/alpha+
        c_zm = (_Combo.one(one, xp, one) - w0.left(xp.scale(a0))).scale(ap)
        xm_w = (_Combo.one(one, zp, one) - w0.left(zp.scale(a0))).scale(ap)
        zc_w = c_zm.left(zp)       # z c(z) w+
        p_w = xm_w.left(xp)        # p(z) w+
        # f p + (g/q) z c = 1
        return p_w.left(ctx.zpoly(sep.f)) + zc_w.left(ctx.zpoly(sep.g.scale(Q.inverse())))
    am = params.alpha_minus.inverse()
    m = Scalar.qpow(-2) * a0
    # c z+ w- = (d(x-) + q^-2 alpha0 x- w0)/alpha- ; x+ w- = (d(z-) + q^-2 alpha0 z- w0)/alpha-
    c_zp = (_Combo.one(one, xm, one) + w0.left(xm.scale(m))).scale(am)
    xp_w = (_Combo.one(one, zm, one) + w0.left(zm.scale(m))).scale(am)
    zc_w = c_zp.left(zm)           # z c(z) w-
    pq_w = xp_w.left(xm)           # p(q^2 z) w-
    # from f p + g z p_{q^2} = 1:  f p(q^2 z) + (g - (q^2-1) f)/q z c = 1
    f, g = sep.f, sep.g
    coef = (g - f.scale(Q * Q - 1)).scale(Q.inverse())
    return pq_w.left(ctx.zpoly(f)) + zc_w.left(ctx.zpoly(coef))


# ---------------------------------------------------------------------------
# the restricted calculus on B

BAR_TARGETS = ("z+^2*w-", "x+^2*w-", "z+*x+*w-", "z-^2*w+", "x-^2*w+", "z-*x-*w+")


@dataclass
class BarWitness:
    """Terms (u, g, v) meaning u d(g) v with u, v in B and g in {x, y, z}."""

    target: str
    terms: List[Tuple[BElem, str, BElem]]

    def evaluate(self, params: DerivParams = DEFAULT_PARAMS) -> OmegaElem:
        ctx = self.terms[0][0].ctx
        out = OmegaElem.zero_form(ctx)
        for u, g, v in self.terms:
            dg = d(theta(ctx.bgen(g)), params)
            out = out + right_act(dg.left(theta(u)), theta(v))
        return out


def bar_target_form(ctx: AlgebraCtx, target: str) -> OmegaElem:
    xp, xm, zp, zm = (ctx.gen(g) for g in ("x+", "x-", "z+", "z-"))
    coeffs = {
        "z+^2*w-": (zp * zp, "minus"),
        "x+^2*w-": (xp * xp, "minus"),
        "z+*x+*w-": (zp * xp, "minus"),
        "z-^2*w+": (zm * zm, "plus"),
        "x-^2*w+": (xm * xm, "plus"),
        "z-*x-*w+": (zm * xm, "plus"),
    }
    try:
        a, slot = coeffs[target]
    except KeyError:
        raise CalculusError(f"unknown target {target!r}") from None
    return OmegaElem.basis(ctx, slot).left(a)


class _BCombo:
    def __init__(self, terms=()):
        self.terms = list(terms)

    @classmethod
    def one(cls, u, g, v):
        return cls([(u, g, v)])

    def __add__(self, other):
        return _BCombo(self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return _BCombo([(u.scale(c), g, v) for u, g, v in self.terms])

    def left(self, b: BElem):
        return _BCombo([(b * u, g, v) for u, g, v in self.terms])


def bar_omega_witness(target: str, ctx: AlgebraCtx,
                      params: DerivParams = DEFAULT_PARAMS) -> BarWitness:
    """A B-bimodule combination of d(x), d(y), d(z) equal to a generator of
    the restricted calculus."""
    _require_regular(ctx)
    if target not in BAR_TARGETS:
        raise CalculusError(f"unknown target {target!r}")
    combos = (_bar_linear if ctx.p.degree <= 1 else _bar_generic)(ctx, params)
    combo = combos[target]
    merged: List[Tuple[BElem, str, BElem]] = []
    for u, g, v in combo.terms:
        for i, (u2, g2, v2) in enumerate(merged):
            if g2 == g and v2 == v:
                merged[i] = (u2 + u, g, v)
                break
        else:
            merged.append((u, g, v))
    wit = BarWitness(target, [t for t in merged if t[0]])
    if wit.evaluate(params) != bar_target_form(ctx, target):
        raise CalculusError(f"witness for {target} failed to evaluate")
    return wit


def _bar_common(ctx, params, zp2, zm2):
    """Given witnesses for z+^2 w- and z-^2 w+, derive the other four."""
    one = ctx.bscalar(1)
    z = ctx.bgen("z")
    ap, am = params.alpha_plus, params.alpha_minus
    c = ctx.bzpoly(ctx.c)
    dx = _BCombo.one(one, "x", one)
    dy = _BCombo.one(one, "y", one)
    dz = _BCombo.one(one, "z", one)
    # d(x) = q am c z+^2 w- + ap x-^2 w+
    xm2 = (dx - zp2.left(c.scale(Q * am))).scale(ap.inverse())
    # d(y) = q am x+^2 w- + ap c z-^2 w+
    xp2 = (dy - zm2.left(c.scale(ap))).scale((Q * am).inverse())
    return xm2, xp2, dx, dy, dz, z, one


def _bar_generic(ctx, params):
    one = ctx.bscalar(1)
    z = ctx.bgen("z")
    y = ctx.bgen("y")
    ap, am = params.alpha_plus, params.alpha_minus
    sep = ctx.separability
    q2, q4 = Q * Q, Scalar.qpow(4)
    dx = _BCombo.one(one, "x", one)
    dy = _BCombo.one(one, "y", one)
    dz = _BCombo.one(one, "z", one)
    # z d(x) - d(x) z = (1 - q^4) ap z x-^2 w+
    z_xm2 = (_BCombo.one(z, "x", one) - _BCombo.one(one, "x", z)).scale(((1 - q4) * ap).inverse())
    # z d(x) = q am z c z+^2 w- + ap z x-^2 w+
    zc_zp2 = (_BCombo.one(z, "x", one) - z_xm2.scale(ap)).scale((Q * am).inverse())
    # d(z) x = am p z+^2 w- + q^2 ap z x-^2 w+
    p_zp2 = (_BCombo.one(one, "z", ctx.bgen("x")) - z_xm2.scale(q2 * ap)).scale(am.inverse())
    g_over_q = sep.g.scale(Q.inverse())
    zp2 = p_zp2.left(ctx.bzpoly(sep.f)) + zc_zp2.left(ctx.bzpoly(g_over_q))
    # z d(y) - d(y) z = (q - q^-3) am z x+^2 w-
    z_xp2 = (_BCombo.one(z, "y", one) - _BCombo.one(one, "y", z)).scale(
        ((Q - Scalar.qpow(-3)) * am).inverse())
    # y d(z) = q^-1 am z x+^2 w- + q^-1 ap p z-^2 w+
    p_zm2 = (_BCombo.one(y, "z", one).scale(Q) - z_xp2.scale(am)).scale(ap.inverse())
    # z d(y) = q am z x+^2 w- + ap z c z-^2 w+
    zc_zm2 = (_BCombo.one(z, "y", one) - z_xp2.scale(Q * am)).scale(ap.inverse())
    zm2 = p_zm2.left(ctx.bzpoly(sep.f)) + zc_zm2.left(ctx.bzpoly(g_over_q))
    xm2, xp2, dx, dy, dz, z, one = _bar_common(ctx, params, zp2, zm2)
    # ap p z- x- w+ = y d(x) - q^-1 c(q^-2 z)/(1 - q^-4) (z d(z) - q^-2 d(z) z)
    c_shift = ctx.bzpoly(ctx.c.subs_scaled(Scalar.qpow(-2))).scale(
        Scalar.qpow(-1) * (1 - Scalar.qpow(-4)).inverse())
    zdz_a = _BCombo.one(z, "z", one) - _BCombo.one(one, "z", z).scale(Scalar.qpow(-2))
    p_zmxm = (_BCombo.one(y, "x", one) - zdz_a.left(c_shift)).scale(ap.inverse())
    # ap z z- x- w+ = (z d(z) - q^2 d(z) z)/(1 - q^4)
    zdz_b = _BCombo.one(z, "z", one) - _BCombo.one(one, "z", z).scale(q2)
    z_zmxm = zdz_b.scale(((1 - q4) * ap).inverse())
    zmxm = z_zmxm.left(ctx.bzpoly(sep.f0)) + p_zmxm.left(ctx.bzpoly(sep.g0))
    # d(z) = am z+ x+ w- + ap z- x- w+
    zpxp = (dz - zmxm.scale(ap)).scale(am.inverse())
    return {
        "z+^2*w-": zp2, "x+^2*w-": xp2, "z+*x+*w-": zpxp,
        "z-^2*w+": zm2, "x-^2*w+": xm2, "z-*x-*w+": zmxm,
    }


def _bar_linear(ctx, params):
    one = ctx.bscalar(1)
    x, y, z = (ctx.bgen(g) for g in ("x", "y", "z"))
    ap, am = params.alpha_plus, params.alpha_minus
    p = ctx.p
    mu, lam = p[0], p[1]
    # am mu z+^2 w- = d(z) x - q^-2 d(x) z
    zp2 = (_BCombo.one(one, "z", x) - _BCombo.one(one, "x", z).scale(Scalar.qpow(-2))).scale(
        (am * mu).inverse())
    # ap mu z-^2 w+ = q y d(z) - q^-1 z d(y)
    zm2 = (_BCombo.one(y, "z", one).scale(Q) - _BCombo.one(z, "y", one).scale(Scalar.qpow(-1))).scale(
        (ap * mu).inverse())
    # am mu z+ x+ w- = q^-2 x d(y) - q^2 lam z d(z)
    zpxp = (_BCombo.one(x, "y", one).scale(Scalar.qpow(-2))
            - _BCombo.one(z, "z", one).scale(Q * Q * lam)).scale((am * mu).inverse())
    xm2, xp2, dx, dy, dz, z, one = _bar_common(ctx, params, zp2, zm2)
    # d(z) = am z+ x+ w- + ap z- x- w+
    zmxm = (dz - zpxp.scale(am)).scale(ap.inverse())
    return {
        "z+^2*w-": zp2, "x+^2*w-": xp2, "z+*x+*w-": zpxp,
        "z-^2*w+": zm2, "x-^2*w+": xm2, "z-*x-*w+": zmxm,
    }


# ---------------------------------------------------------------------------
# linear-algebra oracle for density


def solve_density(target: str, ctx: AlgebraCtx, max_length: int,
                  params: DerivParams = DEFAULT_PARAMS):
    """Search for sum_g a_g d(g) = target with a_g spanned by monomials of
    word length <= max_length (g over the four generators).

    Independent of the constructive witnesses: solves the linear system over
    Q(q) by Gaussian elimination.  Returns a DensityWitness or None.
    """
    from .linalg import solve

    slot = {"w-": "minus", "w0": "zero", "w+": "plus"}[target]
    gens = ("x+", "x-", "z+", "z-")
    dgs = {g: d(ctx.gen(g), params) for g in gens}
    unknowns = []
    columns = []
    # d(A_k) has its w- / w0 / w+ coefficients in degrees k+2 / k / k-2, and
    # the target coefficient is 1, of degree 0
    shift = {"minus": -2, "zero": 0, "plus": 2}[slot]
    for g in gens:
        gdeg = ctx.gen(g).homogeneous_degree()
        for m in a_basis(max_length, degree=shift - gdeg):
            unknowns.append((m, g))
            columns.append(dgs[g].left(ctx.monomial(*m)))
    rows = {}
    for j, col in enumerate(columns):
        for s in SLOTS:
            for mono, c in col[s].terms.items():
                rows.setdefault((s, mono), {})[j] = c
    target_form = OmegaElem.basis(ctx, slot)
    rhs = {}
    for s in SLOTS:
        for mono, c in target_form[s].terms.items():
            rhs[(s, mono)] = c
            rows.setdefault((s, mono), {})
    keys = sorted(rows, key=lambda k: (k[0], k[1].sort_key()))
    matrix = [rows[k] for k in keys]
    b = [rhs.get(k, Scalar()) for k in keys]
    sol = solve(matrix, b, len(unknowns))
    if sol is None:
        return None
    pairs = []
    acc: Dict[str, AlgElem] = {g: ctx.zero for g in gens}
    for (m, g), c in zip(unknowns, sol):
        if c:
            acc[g] = acc[g] + ctx.monomial(*m, c)
    for g in gens:
        if acc[g]:
            pairs.append((acc[g], ctx.gen(g)))
    return DensityWitness(_NAMES[slot], pairs)
