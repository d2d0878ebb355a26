"""Spinor bundle, Dirac operator and real structure over B(p;q)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import (
    AlgElem,
    AlgebraCtx,
    BElem,
    NotRegularError,
    a_basis,
    b_basis,
    star,
    theta,
)
from .calculus import OmegaElem, d, horizontal, right_act
from .derivations import DEFAULT_PARAMS, DerivParams, derivations
from .scalars import ONE, Q, Scalar, ZPoly, as_scalar


class SpinError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sign of a rational function on 0 < q < 1


def _zq_to_sympy(coeffs):
    import sympy

    q = sympy.Symbol("q")
    return sympy.Poly(list(reversed([sympy.Integer(c) for c in coeffs])) or [0], q)


def sign_on_unit_interval(s: Scalar) -> Optional[int]:
    """+1 or -1 if s keeps that sign for every q in (0, 1), else None."""
    if not s:
        return None
    sign = 1
    for part in (s.num, s.den):
        poly = _zq_to_sympy(part)
        if poly.degree() > 0:
            inside = poly.count_roots(0, 1)
            at_ends = sum(1 for x in (0, 1) if poly.eval(x) == 0)
            if inside - at_ends > 0:
                return None
        v = poly.eval(Fraction(1, 2))
        sign *= 1 if v > 0 else -1
    return sign


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class SpinParams:
    """(beta+, beta-, nu) together with the KO-dimension mode (2 or 6).

    Mode 2 uses nu^2 = -q^3 beta-*/beta+ and needs beta-*/beta+ < 0 on
    0 < q < 1; mode 6 flips both signs.
    """

    beta_plus: Scalar = ONE
    beta_minus: Scalar = -Scalar.qpow(-3)
    nu: Scalar = ONE
    ko: int = 2

    def __post_init__(self):
        for name in ("beta_plus", "beta_minus", "nu"):
            v = as_scalar(getattr(self, name))
            if not v:
                raise SpinError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)
        if self.ko not in (2, 6):
            raise SpinError("KO-dimension mode must be 2 or 6")

    @property
    def epsilon(self) -> int:
        """Expected sign of J^2."""
        return -1 if self.ko == 2 else 1

    def constraint_holds(self) -> bool:
        ratio = Scalar.qpow(3) * self.beta_minus.conj() / self.beta_plus
        if self.ko == 2:
            ratio = -ratio
        return self.nu * self.nu == ratio

    def orientation_holds(self) -> bool:
        s = sign_on_unit_interval(self.beta_minus.conj() / self.beta_plus)
        return s == (-1 if self.ko == 2 else 1)

    def validate(self) -> "SpinParams":
        if not self.constraint_holds():
            raise SpinError("spin parameters violate nu^2 = -q^3 beta-*/beta+"
                            if self.ko == 2 else
                            "spin parameters violate nu^2 = q^3 beta-*/beta+")
        if not self.orientation_holds():
            raise SpinError("beta-*/beta+ has the wrong sign on 0 < q < 1")
        return self


DEFAULT_SPIN = SpinParams()
KO6_SPIN = SpinParams(beta_minus=Scalar.qpow(-3), ko=6)


# ---------------------------------------------------------------------------
# spinors


class Spinor:
    """a s+ + b s- with |a| = -1 and |b| = +1."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus: AlgElem, minus: AlgElem):
        if not plus.is_homogeneous(-1):
            raise SpinError("s+ component must be homogeneous of degree -1")
        if not minus.is_homogeneous(1):
            raise SpinError("s- component must be homogeneous of degree +1")
        self.plus = plus
        self.minus = minus

    @classmethod
    def zero(cls, ctx: AlgebraCtx) -> "Spinor":
        return cls(ctx.zero, ctx.zero)

    @property
    def ctx(self) -> AlgebraCtx:
        return self.plus.ctx

    def __add__(self, other):
        return Spinor(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other):
        return Spinor(self.plus - other.plus, self.minus - other.minus)

    def __neg__(self):
        return Spinor(-self.plus, -self.minus)

    def scale(self, c) -> "Spinor":
        return Spinor(self.plus.scale(c), self.minus.scale(c))

    def left(self, u: AlgElem) -> "Spinor":
        """Left multiplication by a degree-0 element."""
        return Spinor(u * self.plus, u * self.minus)

    def __eq__(self, other):
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        return hash((self.plus, self.minus))

    def is_zero(self) -> bool:
        return not (self.plus or self.minus)

    def __str__(self):
        parts = []
        if self.plus:
            parts.append(f"({self.plus})*s+")
        if self.minus:
            parts.append(f"({self.minus})*s-")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Spinor({str(self)!r})"


# ---------------------------------------------------------------------------
# strong connection and idempotents


def _p0(ctx: AlgebraCtx) -> Scalar:
    if not ctx.regular:
        raise NotRegularError()
    p0 = ctx.p[0]
    if not p0:
        raise SpinError("p(0) = 0")
    return p0


def _h(ctx: AlgebraCtx, shifted: bool) -> ZPoly:
    """(p(0) - p(lam z))/z with lam = q^2 if shifted else 1."""
    p = ctx.p.subs_scaled(Scalar.qpow(2)) if shifted else ctx.p
    return (-p).shift_down()


def strong_connection(n: int, ctx: AlgebraCtx) -> List[Tuple[AlgElem, AlgElem]]:
    """Tensor legs of l(n) in A_-n (x) A_n."""
    p0 = _p0(ctx)
    inv = p0.inverse()
    xp, xm, zp, zm = (ctx.gen(g) for g in ("x+", "x-", "z+", "z-"))
    if n == 1:
        h = ctx.zpoly(_h(ctx, True))
        return [((h * zm).scale(inv), zp), (xm.scale(-Q * inv), xp.scale(-Q.inverse()))]
    if n == -1:
        h = ctx.zpoly(_h(ctx, False))
        return [(zp.scale(inv), h * zm), (xp.scale(inv), xm)]
    raise SpinError("strong connection implemented for n = +1, -1")


BMatrix2 = Tuple[Tuple[BElem, BElem], Tuple[BElem, BElem]]


def idempotents(ctx: AlgebraCtx) -> Tuple[BMatrix2, BMatrix2]:
    p0 = _p0(ctx)
    inv = p0.inverse()
    x, y = ctx.bgen("x"), ctx.bgen("y")
    p = ctx.p
    pq = p.subs_scaled(Scalar.qpow(2))
    h = ctx.bzpoly((-p).shift_down())
    e1 = ((ctx.bzpoly(ZPoly.constant(p0) - pq).scale(inv), (-x).scale(inv)),
          ((-(h * y)).scale(inv), ctx.bzpoly(p).scale(inv)))
    em1 = ((ctx.bzpoly(pq).scale(inv), x.scale(inv)),
           ((h * y).scale(inv), ctx.bzpoly(ZPoly.constant(p0) - p).scale(inv)))
    return e1, em1


def matmul2(a: BMatrix2, b: BMatrix2) -> BMatrix2:
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
                 for i in range(2))


def matadd2(a: BMatrix2, b: BMatrix2) -> BMatrix2:
    return tuple(tuple(a[i][j] + b[i][j] for j in range(2)) for i in range(2))


def identity2(ctx: AlgebraCtx) -> BMatrix2:
    one, zero = ctx.bscalar(1), ctx.bscalar(0)
    return ((one, zero), (zero, one))


# ---------------------------------------------------------------------------
# connection, Clifford action, Dirac operator


def connection(s: Spinor, params: DerivParams = DEFAULT_PARAMS
               ) -> List[Tuple[OmegaElem, Spinor]]:
    """pi(d(a)) l(-1) s+ + pi(d(b)) l(1) s-, as (one-form, spinor) pairs.

    Each leg pair contributes one term per horizontal direction, so a
    generic input produces eight terms.
    """
    ctx = s.ctx
    out = []
    zero = ctx.zero
    for comp, n in ((s.plus, -1), (s.minus, 1)):
        if not comp:
            continue
        dh = horizontal(d(comp, params))
        for first, second in strong_connection(n, ctx):
            for slot in ("plus", "minus"):
                c = dh[slot]
                if not c:
                    continue
                w = OmegaElem(c if slot == "minus" else zero, zero, c if slot == "plus" else zero)
                form = right_act(w, first)
                spin = Spinor(second, zero) if n == -1 else Spinor(zero, second)
                out.append((form, spin))
    return out


def clifford(w: OmegaElem, s: Spinor, params: SpinParams = DEFAULT_SPIN) -> Spinor:
    """(c- w+ + c+ w-) |> (a s+ + b s-) = beta+ c- b s+ + beta- c+ a s-."""
    if w.zero:
        raise SpinError("Clifford action needs a horizontal one-form")
    c_plus, c_minus = w.minus, w.plus
    if not c_plus.is_homogeneous(2) or not c_minus.is_homogeneous(-2):
        raise SpinError("Clifford action needs w- and w+ coefficients of degree +2 and -2")
    return Spinor((c_minus * s.minus).scale(params.beta_plus),
                  (c_plus * s.plus).scale(params.beta_minus))


def dirac_via_connection(s: Spinor, spin: SpinParams = DEFAULT_SPIN,
                         params: DerivParams = DEFAULT_PARAMS) -> Spinor:
    out = Spinor.zero(s.ctx)
    for w, t in connection(s, params):
        out = out + clifford(w, t, spin)
    return out


def dirac(s: Spinor, spin: SpinParams = DEFAULT_SPIN,
          params: DerivParams = DEFAULT_PARAMS) -> Spinor:
    """D(a s+ + b s-) = beta+ q^-1 d+(b) s+ + beta- q d-(a) s-."""
    ds = derivations(s.ctx, params)
    return Spinor(ds.dplus(s.minus).scale(spin.beta_plus * Q.inverse()),
                  ds.dminus(s.plus).scale(spin.beta_minus * Q))


def grading(s: Spinor) -> Spinor:
    return Spinor(s.plus, -s.minus)


def real_structure(s: Spinor, spin: SpinParams = DEFAULT_SPIN, strict: bool = True) -> Spinor:
    """J(a s+ + b s-) = eps nu^-1 b* s+ + nu a* s-, eps = -1 (KO 2) or +1 (KO 6)."""
    if strict and not spin.constraint_holds():
        raise SpinError("spin parameters violate the real-structure constraint")
    nu = spin.nu
    return Spinor(star(s.minus).scale(nu.inverse() * spin.epsilon),
                  star(s.plus).scale(nu))


def commutator_d_u(u: AlgElem, s: Spinor, spin: SpinParams = DEFAULT_SPIN,
                   params: DerivParams = DEFAULT_PARAMS) -> Spinor:
    """[D, u] s."""
    return dirac(s.left(u), spin, params) - dirac(s, spin, params).left(u)


# ---------------------------------------------------------------------------
# verification of the real-structure conditions


@dataclass
class ConditionResult:
    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None
    millis: float = 0.0


@dataclass
class KOReport:
    ko: int
    results: List[ConditionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> ConditionResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def spinor_basis(ctx: AlgebraCtx, bound: int) -> List[Spinor]:
    zero = ctx.zero
    out = [Spinor(ctx.monomial(*m), zero) for m in a_basis(bound, degree=-1)]
    out += [Spinor(zero, ctx.monomial(*m)) for m in a_basis(bound, degree=1)]
    return out


def _run(name, cases, test):
    t0 = time.perf_counter()
    n = 0
    for case in cases:
        n += 1
        bad = test(*case)
        if bad is not None:
            return ConditionResult(name, False, n, bad, (time.perf_counter() - t0) * 1e3)
    return ConditionResult(name, True, n, None, (time.perf_counter() - t0) * 1e3)


def verify_ko_dimension(ctx: AlgebraCtx, spin: SpinParams = DEFAULT_SPIN, bound: int = 3,
                        params: DerivParams = DEFAULT_PARAMS) -> KOReport:
    """Check the five real-structure conditions on spanning sets.

    Spinors range over basis monomials of word length <= bound; u, v over
    the B basis of the same length.  The derivation/star exchange rules
    are checked on homogeneous basis monomials as a sixth entry.
    """
    ctx.require_regular()
    eps = spin.epsilon
    J = lambda s: real_structure(s, spin, strict=False)
    D = lambda s: dirac(s, spin, params)
    spinors = spinor_basis(ctx, bound)
    bs = [theta(_bmono(ctx, m)) for m in b_basis(bound)]
    report = KOReport(spin.ko)

    def j2(s):
        lhs = J(J(s))
        return None if lhs == s.scale(eps) else f"J(J({s})) = {lhs}"

    def jgamma(s):
        lhs, rhs = J(grading(s)), -grading(J(s))
        return None if lhs == rhs else f"s = {s}: J(gamma(s)) = {lhs}, -gamma(J(s)) = {rhs}"

    def jd(s):
        lhs, rhs = J(D(s)), D(J(s))
        return None if lhs == rhs else f"s = {s}: J(D(s)) = {lhs}, D(J(s)) = {rhs}"

    def jvj(v, s):
        return J(J(s).left(v))

    def order0(u, v, s):
        lhs = jvj(v, s).left(u) - jvj(v, s.left(u))
        return None if lhs.is_zero() else f"u = {u}, v = {v}, s = {s}: [u, JvJ] s = {lhs}"

    def order1(u, v, s):
        lhs = commutator_d_u(u, jvj(v, s), spin, params) - jvj(v, commutator_d_u(u, s, spin, params))
        return None if lhs.is_zero() else f"u = {u}, v = {v}, s = {s}: [[D,u], JvJ] s = {lhs}"

    report.results.append(_run("J^2 = %sid" % ("-" if eps < 0 else "+"), [(s,) for s in spinors], j2))
    report.results.append(_run("J gamma = -gamma J", [(s,) for s in spinors], jgamma))
    report.results.append(_run("J D = D J", [(s,) for s in spinors], jd))
    triples = [(u, v, s) for u in bs for v in bs for s in spinors]
    report.results.append(_run("[u, J v J] = 0", triples, order0))
    report.results.append(_run("[[D, u], J v J] = 0", triples, order1))
    report.results.append(_run("derivation/star exchange",
                               [(ctx.monomial(*m),) for m in a_basis(bound)],
                               lambda c: exchange_identity(c, params)))
    return report


def _bmono(ctx, m):
    return BElem({m: ONE}, ctx)


def exchange_identity(c: AlgElem, params: DerivParams = DEFAULT_PARAMS) -> Optional[str]:
    """d+(c)* = q^(|c|-2) d-(c*) and d-(c)* = q^(|c|+2) d+(c*) for homogeneous c."""
    deg = c.homogeneous_degree()
    if deg is None:
        raise SpinError("exchange identity needs a homogeneous element")
    ds = derivations(c.ctx, params)
    cs = star(c)
    if star(ds.dplus(c)) != ds.dminus(cs).scale(Scalar.qpow(deg - 2)):
        return f"c = {c}: d+(c)* != q^(|c|-2) d-(c*)"
    if star(ds.dminus(c)) != ds.dplus(cs).scale(Scalar.qpow(deg + 2)):
        return f"c = {c}: d-(c)* != q^(|c|+2) d+(c*)"
    return None
