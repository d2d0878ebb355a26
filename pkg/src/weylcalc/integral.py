"""Divergence, integral and the beta recurrence on A(p;q)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .algebra import AlgElem, AlgebraCtx, NotRegularError
from .calculus import OmegaElem, SLOTS
from .derivations import DEFAULT_PARAMS, DerivParams, derivations, sigma
from .linalg import rank
from .scalars import ONE, ZERO, Scalar, ZPoly, q_integer


class IntegralError(ValueError):
    pass


@dataclass(frozen=True)
class CoVector:
    """A right-linear map Omega -> A, fixed by its values on w-, w0, w+."""

    minus: AlgElem
    zero: AlgElem
    plus: AlgElem

    @classmethod
    def dual(cls, ctx: AlgebraCtx, slot: str) -> "CoVector":
        vals = {s: ctx.zero for s in SLOTS}
        vals[slot] = ctx.one
        return cls(**vals)

    def __getitem__(self, slot: str) -> AlgElem:
        return getattr(self, slot)

    def __add__(self, other: "CoVector") -> "CoVector":
        return CoVector(self.minus + other.minus, self.zero + other.zero, self.plus + other.plus)

    def __call__(self, w: OmegaElem) -> AlgElem:
        # xi(a w_i) = xi(w_i sigma_i^-1(a)) = xi(w_i) sigma_i^-1(a)
        out = w.ctx.zero
        for s in SLOTS:
            a = w[s]
            if a:
                out = out + self[s] * sigma(s, a, inverse=True)
        return out

    def act(self, a: AlgElem) -> "CoVector":
        """xi . a, i.e. w -> xi(a w)."""
        return CoVector(*(self[s] * sigma(s, a, inverse=True) for s in SLOTS))

    def __str__(self):
        return f"xi(w-)={self.minus}; xi(w0)={self.zero}; xi(w+)={self.plus}"


def divergence(xi: CoVector, params: DerivParams = DEFAULT_PARAMS) -> AlgElem:
    ds = derivations(xi.minus.ctx, params)
    q2 = Scalar.qpow(2)
    return (ds.dminus(xi.minus).scale(Scalar.qpow(-2))
            + ds.d0(xi.zero)
            + ds.dplus(xi.plus).scale(q2))


# ---------------------------------------------------------------------------
# beta coefficients


@dataclass
class BetaTable:
    mu: Tuple[Scalar, ...]
    beta: Dict[Tuple[int, int], Scalar]
    kmax: int

    @property
    def n(self) -> int:
        return len(self.mu)

    def row(self, k: int) -> List[Scalar]:
        return [self.beta[(k, i)] for i in range(self.n)]


def _mu(p: ZPoly) -> Tuple[Scalar, ...]:
    if p.degree < 1:
        raise IntegralError("constant p has trivial integral space")
    hat = p.monic()
    return tuple(-hat[i] for i in range(p.degree))


def beta_table(p: ZPoly, kmax: int) -> BetaTable:
    """beta_i^k = sum_j mu_(n-j) beta_i^(k-j) + mu_(i-k) for 0 <= k <= kmax."""
    mu = _mu(p)
    n = len(mu)
    beta: Dict[Tuple[int, int], Scalar] = {}
    for k in range(kmax + 1):
        for i in range(n):
            acc = mu[i - k] if i - k >= 0 else ZERO
            for j in range(1, n + 1):
                if k - j >= 0:
                    acc = acc + mu[n - j] * beta[(k - j, i)]
            beta[(k, i)] = acc
    return BetaTable(mu, beta, kmax)


# ---------------------------------------------------------------------------
# the integral


@dataclass(frozen=True)
class IntegralValue:
    """Coordinates over v_i = Lambda(z^i), i < n."""

    coeffs: Tuple[Scalar, ...]

    def __add__(self, other):
        return IntegralValue(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "IntegralValue":
        return IntegralValue(tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        parts = [f"({c})*v{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


def _zero_value(n: int) -> IntegralValue:
    return IntegralValue((ZERO,) * n)


def _unit(n: int, i: int) -> IntegralValue:
    return IntegralValue(tuple(ONE if j == i else ZERO for j in range(n)))


class _Integrator:
    """Per-context caches for Lambda(z^k)."""

    def __init__(self, ctx: AlgebraCtx):
        if ctx.p.degree < 1:
            raise IntegralError("constant p has trivial integral space")
        if not ctx.regular:
            raise NotRegularError()
        self.ctx = ctx
        self.n = ctx.p.degree
        self.mu = _mu(ctx.p)
        self._table = beta_table(ctx.p, 0)
        self._compact: Dict[int, IntegralValue] = {}
        self._rec: Dict[int, IntegralValue] = {}

    def _beta(self, k):
        if k > self._table.kmax:
            self._table = beta_table(self.ctx.p, max(k, 2 * self._table.kmax))
        return self._table

    def compact(self, k: int) -> IntegralValue:
        hit = self._compact.get(k)
        if hit is None:
            n = self.n
            if k < n:
                hit = _unit(n, k)
            else:
                kk = k - n
                tbl = self._beta(kk)
                den = q_integer(n + kk + 1).inverse()
                hit = IntegralValue(tuple(
                    q_integer(i + 1) * den * tbl.beta[(kk, i)] for i in range(n)))
            self._compact[k] = hit
        return hit

    def recurrence(self, k: int) -> IntegralValue:
        # Lambda(z^(n+k)) = sum_i [i+k+1]/[n+k+1] mu_i Lambda(z^(k+i))
        n = self.n
        for j in range(len(self._rec), k + 1):
            if j < n:
                self._rec[j] = _unit(n, j)
                continue
            kk = j - n
            den = q_integer(n + kk + 1).inverse()
            acc = _zero_value(n)
            for i in range(n):
                if self.mu[i]:
                    acc = acc + self._rec[kk + i].scale(q_integer(i + kk + 1) * den * self.mu[i])
            self._rec[j] = acc
        return self._rec[k]


_INTEGRATORS: Dict[AlgebraCtx, _Integrator] = {}


def _integrator(ctx: AlgebraCtx) -> _Integrator:
    it = _INTEGRATORS.get(ctx)
    if it is None:
        it = _INTEGRATORS[ctx] = _Integrator(ctx)
    return it


def _integrate(a: AlgElem, which: str) -> IntegralValue:
    it = _integrator(a.ctx)
    out = _zero_value(it.n)
    fn = it.compact if which == "compact" else it.recurrence
    for m, c in a.terms.items():
        if m.k == 0 and m.zp == m.zm:
            out = out + fn(m.zp).scale(c)
    return out


def integral(a: AlgElem) -> IntegralValue:
    """Lambda(a) via the closed beta-coefficient formula."""
    return _integrate(a, "compact")


def integral_by_recurrence(a: AlgElem) -> IntegralValue:
    """Lambda(a) by iterating the order-n recurrence directly."""
    return _integrate(a, "recurrence")


def integral_table(p: ZPoly, kmax: int) -> List[Tuple[int, IntegralValue]]:
    ctx = AlgebraCtx(p)
    it = _integrator(ctx)
    return [(k, it.compact(k)) for k in range(kmax + 1)]


def check_lambda_functional(f: ZPoly, ctx: AlgebraCtx) -> bool:
    """Lambda(q^2 p(q^2 z) f(q^2 z)) == Lambda(p(z) f(z))."""
    q2 = Scalar.qpow(2)
    p = ctx.p
    lhs = (p.subs_scaled(q2) * f.subs_scaled(q2)).scale(q2)
    rhs = p * f
    return integral(ctx.zpoly(lhs)) == integral(ctx.zpoly(rhs))


def z_image_of_div(ctx: AlgebraCtx, f: ZPoly, params: DerivParams = DEFAULT_PARAMS) -> AlgElem:
    """div of the covector with xi(w-) = q^2 x- z- f(z): lands in K[z]."""
    xm_zm = ctx.monomial(-1, 0, 1)
    xi = CoVector(xm_zm * ctx.zpoly(f).scale(Scalar.qpow(2)), ctx.zero, ctx.zero)
    return divergence(xi, params)


def quotient_dimension(ctx: AlgebraCtx, max_degree: int,
                       params: DerivParams = DEFAULT_PARAMS) -> int:
    """Codimension in K[z] of degree <= max_degree of the divergence images
    of the covectors x- z- z^j; equals deg p once max_degree >= deg p."""
    n = ctx.p.degree
    rows = []
    for j in range(max_degree - n + 1):
        img = z_image_of_div(ctx, ZPoly.monomial(j), params)
        row = {}
        for m, c in img.terms.items():
            if m.k != 0 or m.zp != m.zm:
                raise IntegralError("divergence image left K[z]")
            row[m.zp] = c
        rows.append(row)
    return (max_degree + 1) - rank(rows)
