"""Twisting automorphisms and skew derivations of A(p;q).

The automorphisms scale a homogeneous element of degree k by q^k
(``plus``/``minus``) or q^(2k) (``zero``).  The three skew derivations are
fixed on generators and extended by the twisted Leibniz rule
``d(ab) = d(a) sigma(b) + a d(b)`` along the normal-form word of each
monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .algebra import AlgElem, AlgebraCtx, AMonomial, BElem, theta
from .scalars import ONE, Q, Scalar, as_scalar


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class DerivParams:
    alpha0: Scalar = ONE
    alpha_plus: Scalar = ONE
    alpha_minus: Scalar = Q

    def __post_init__(self):
        for name in ("alpha0", "alpha_plus", "alpha_minus"):
            v = as_scalar(getattr(self, name))
            if not v:
                raise DerivationError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)

    @property
    def star_compatible(self) -> bool:
        return (self.alpha0.conj() == self.alpha0
                and self.alpha_minus.conj() == Q * self.alpha_plus)


DEFAULT_PARAMS = DerivParams()

_SIGMA_FACTOR = {"plus": 1, "minus": 1, "zero": 2}


def sigma(tag: str, a: AlgElem, inverse: bool = False) -> AlgElem:
    """sigma_plus = sigma_minus: q^deg; sigma_zero: q^(2 deg)."""
    try:
        f = _SIGMA_FACTOR[tag]
    except KeyError:
        raise DerivationError(f"unknown automorphism {tag!r}") from None
    if inverse:
        f = -f
    return AlgElem({m: c * Scalar.qpow(f * m.degree) for m, c in a.terms.items()}, a.ctx)


_TWIST = {"d0": "zero", "dplus": "plus", "dminus": "minus"}


class SkewDerivation:
    """One of the three skew derivations d0, dplus, dminus on a given algebra."""

    def __init__(self, tag: str, ctx: AlgebraCtx, params: DerivParams = DEFAULT_PARAMS):
        if tag not in _TWIST:
            raise DerivationError(f"unknown derivation {tag!r}")
        self.tag = tag
        self.ctx = ctx
        self.params = params
        self.twist = _TWIST[tag]
        self._sigma_factor = _SIGMA_FACTOR[self.twist]
        self.table = self._generator_table()
        self._cache: Dict[AMonomial, AlgElem] = {}

    def _generator_table(self) -> Dict[str, AlgElem]:
        ctx, pr = self.ctx, self.params
        zero = ctx.zero
        c = ctx.zpoly(ctx.c)
        if self.tag == "d0":
            a0 = pr.alpha0
            m = -Scalar.qpow(-2) * a0
            return {
                "x+": ctx.gen("x+").scale(a0),
                "x-": ctx.gen("x-").scale(m),
                "z+": ctx.gen("z+").scale(a0),
                "z-": ctx.gen("z-").scale(m),
            }
        if self.tag == "dminus":
            am = pr.alpha_minus
            return {
                "x+": zero,
                "z+": zero,
                "x-": (c * ctx.gen("z+")).scale(am),
                "z-": ctx.gen("x+").scale(am),
            }
        ap = pr.alpha_plus
        return {
            "x-": zero,
            "z-": zero,
            "x+": (c * ctx.gen("z-")).scale(ap),
            "z+": ctx.gen("x-").scale(ap),
        }

    def sigma(self, a: AlgElem) -> AlgElem:
        return sigma(self.twist, a)

    def on_monomial(self, m: AMonomial) -> AlgElem:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        ctx = self.ctx
        if m.length == 0:
            out = ctx.zero
        else:
            # peel the first letter g of the normal word: d(g m') = d(g) s(m') + g d(m')
            if m.k:
                step = 1 if m.k > 0 else -1
                g = "x+" if m.k > 0 else "x-"
                rest = AMonomial(m.k - step, m.zp, m.zm)
            elif m.zp:
                g, rest = "z+", AMonomial(0, m.zp - 1, m.zm)
            else:
                g, rest = "z-", AMonomial(0, 0, m.zm - 1)
            rest_el = AlgElem({rest: ONE}, ctx)
            twisted = rest_el.scale(Scalar.qpow(self._sigma_factor * rest.degree))
            out = self.table[g] * twisted + ctx.gen(g) * self.on_monomial(rest)
        self._cache[m] = out
        return out

    def __call__(self, a: AlgElem) -> AlgElem:
        if a.ctx != self.ctx:
            raise DerivationError("element belongs to a different algebra")
        out = {}
        for m, c in a.terms.items():
            for mm, s in self.on_monomial(m).terms.items():
                v = out.get(mm)
                v = c * s if v is None else v + c * s
                if v:
                    out[mm] = v
                else:
                    del out[mm]
        return AlgElem(out, self.ctx)


class Derivations:
    """The triple (d-, d0, d+) for one algebra and parameter set."""

    def __init__(self, ctx: AlgebraCtx, params: DerivParams = DEFAULT_PARAMS):
        self.ctx = ctx
        self.params = params
        self.d0 = SkewDerivation("d0", ctx, params)
        self.dplus = SkewDerivation("dplus", ctx, params)
        self.dminus = SkewDerivation("dminus", ctx, params)

    def __getitem__(self, tag: str) -> SkewDerivation:
        return {"d0": self.d0, "dplus": self.dplus, "dminus": self.dminus,
                "0": self.d0, "+": self.dplus, "-": self.dminus}[tag]


_DERIV_CACHE: Dict[tuple, Derivations] = {}


def derivations(ctx: AlgebraCtx, params: DerivParams = DEFAULT_PARAMS) -> Derivations:
    """Shared (cached) derivation triple for ctx and params."""
    key = (id(ctx), params)
    hit = _DERIV_CACHE.get(key)
    if hit is None or hit.ctx is not ctx:
        hit = Derivations(ctx, params)
        _DERIV_CACHE[key] = hit
    return hit


def apply_skew(d: SkewDerivation, a: AlgElem) -> AlgElem:
    return d(a)


def delta(sign: str, b: BElem, params: DerivParams = DEFAULT_PARAMS) -> AlgElem:
    """delta_(+/-) = d_(+/-) o theta, a derivation B -> A_(-/+2)."""
    ds = derivations(b.ctx, params)
    if sign in ("plus", "+"):
        return ds.dplus(theta(b))
    if sign in ("minus", "-"):
        return ds.dminus(theta(b))
    raise DerivationError(f"unknown sign {sign!r}")
