"""The generalized Weyl algebras A(p;q) and B(p;q).

A(p;q) has generators x+, x-, z+, z- with

    z+ z- = z- z+,   x+ z(+/-) = q^-1 z(+/-) x+,   x- z(+/-) = q z(+/-) x-,
    x+ x- = p(z+ z-),   x- x+ = p(q^2 z- z+),

and B(p;q) has generators x, y, z with

    x z = q^2 z x,   y z = q^-2 z y,   x y = q^2 z p(q^2 z),   y x = z p(z).

Elements are kept in normal form: the x-block stands left of the z-block.
A monomial of A is ``AMonomial(k, zp, zm)`` = x^k z+^zp z-^zm where k > 0
means x+^k and k < 0 means x-^|k|; a monomial of B is ``BMonomial(t, m)``
= x^t z^m with t < 0 meaning y^|t|.
"""

from __future__ import annotations

from typing import Dict, Mapping, NamedTuple, Optional, Sequence

from . import _zq
from . import kernel
from .scalars import (
    ONE,
    Q,
    ZERO,
    Scalar,
    ScalarLike,
    Separability,
    ZPoly,
    as_scalar,
    c_poly,
    is_q2_separable,
)


class AlgebraError(ValueError):
    pass


class NotRegularError(AlgebraError):
    def __init__(self, msg="p not q²-separable"):
        super().__init__(msg)


class AMonomial(NamedTuple):
    k: int
    zp: int
    zm: int

    @property
    def xsign(self) -> str:
        return "none" if self.k == 0 else ("plus" if self.k > 0 else "minus")

    @property
    def xexp(self) -> int:
        return abs(self.k)

    @property
    def degree(self) -> int:
        return self.k + self.zp - self.zm

    @property
    def length(self) -> int:
        """Length of the normal-form word."""
        return abs(self.k) + self.zp + self.zm

    def word(self) -> tuple:
        x = "x+" if self.k > 0 else "x-"
        return (x,) * abs(self.k) + ("z+",) * self.zp + ("z-",) * self.zm

    def sort_key(self):
        rank = 0 if self.k == 0 else (1 if self.k > 0 else 2)
        return (rank, abs(self.k), self.zp, self.zm)


class BMonomial(NamedTuple):
    t: int
    m: int

    @property
    def length(self) -> int:
        return abs(self.t) + self.m

    def word(self) -> tuple:
        g = "x" if self.t > 0 else "y"
        return (g,) * abs(self.t) + ("z",) * self.m

    def sort_key(self):
        rank = 0 if self.t == 0 else (1 if self.t > 0 else 2)
        return (rank, abs(self.t), self.m)


A_GENERATORS = ("x+", "x-", "z+", "z-")
B_GENERATORS = ("x", "y", "z")
_A_GEN_MONO = {
    "x+": AMonomial(1, 0, 0),
    "x-": AMonomial(-1, 0, 0),
    "z+": AMonomial(0, 1, 0),
    "z-": AMonomial(0, 0, 1),
}
_B_GEN_MONO = {"x": BMonomial(1, 0), "y": BMonomial(-1, 0), "z": BMonomial(0, 1)}


class AlgebraCtx:
    """The data (p; q) shared by all elements of one algebra.

    Immutable after construction; product tables are cached lazily.
    """

    def __init__(self, p):
        if not isinstance(p, ZPoly):
            p = ZPoly(p)
        if not p:
            raise AlgebraError("p must be a nonzero polynomial")
        self.p = p
        self.separability: Separability = is_q2_separable(p)
        self.c = c_poly(p)
        self._gtable: Dict[tuple, tuple] = {}
        self._bstruct: Dict[tuple, tuple] = {}
        self._theta_cache: Dict[BMonomial, "AlgElem"] = {}
        self._theta_inv: Dict[AMonomial, tuple] = {}

    @property
    def regular(self) -> bool:
        return self.separability.separable

    def require_regular(self):
        if not self.regular:
            raise NotRegularError()

    def __eq__(self, other):
        return isinstance(other, AlgebraCtx) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"AlgebraCtx(p={self.p})"

    # -- elements ---------------------------------------------------------
    def scalar(self, c: ScalarLike) -> "AlgElem":
        c = as_scalar(c)
        return AlgElem({AMonomial(0, 0, 0): c} if c else {}, self)

    @property
    def one(self) -> "AlgElem":
        return self.scalar(1)

    @property
    def zero(self) -> "AlgElem":
        return AlgElem({}, self)

    def gen(self, name: str) -> "AlgElem":
        try:
            return AlgElem({_A_GEN_MONO[name]: ONE}, self)
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r} for algebra A") from None

    def monomial(self, k: int, zp: int, zm: int, c: ScalarLike = 1) -> "AlgElem":
        return AlgElem({AMonomial(k, zp, zm): as_scalar(c)}, self)

    def zpoly(self, f: ZPoly) -> "AlgElem":
        """f(z) with z = z+ z-."""
        return AlgElem({AMonomial(0, i, i): c for i, c in enumerate(f.coeffs) if c}, self)

    def bgen(self, name: str) -> "BElem":
        try:
            return BElem({_B_GEN_MONO[name]: ONE}, self)
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r} for algebra B") from None

    def bscalar(self, c: ScalarLike) -> "BElem":
        c = as_scalar(c)
        return BElem({BMonomial(0, 0): c} if c else {}, self)

    def bzpoly(self, f: ZPoly) -> "BElem":
        return BElem({BMonomial(0, i): c for i, c in enumerate(f.coeffs) if c}, self)

    # -- structure polynomials -------------------------------------------
    def x_product(self, k1: int, k2: int):
        """x^k1 x^k2 = x^r G(z); returns (r, G)."""
        if k1 == 0 or k2 == 0 or (k1 > 0) == (k2 > 0):
            return k1 + k2, ZPoly([1])
        p = self.p
        if k1 > 0:  # x+^n x-^m
            n, m = k1, -k2
            if n >= m:
                return n - m, _shifted_product(p, m, 0, -2)
            return -(m - n), _shifted_product(p, n, 0, -2).subs_scaled(Scalar.qpow(-2 * (m - n)))
        n, m = -k1, k2  # x-^n x+^m
        if n >= m:
            return -(n - m), _shifted_product(p, m, 2, 2)
        return m - n, _shifted_product(p, n, 2, 2).subs_scaled(Scalar.qpow(2 * (m - n)))

    def _gentry(self, k1: int, k2: int):
        key = (k1, k2)
        entry = self._gtable.get(key)
        if entry is None:
            r, g = self.x_product(k1, k2)
            terms = [(j, c) for j, c in enumerate(g.coeffs) if c]
            den = _common_den([c for _, c in terms])
            enc_terms = []
            for j, c in terms:
                num, off = _over(c, den)
                enc_terms.append((j, num, off))
            entry = (r, tuple(enc_terms), den)
            self._gtable[key] = entry
        return entry


def _shifted_product(p: ZPoly, count: int, start: int, step: int) -> ZPoly:
    """prod_{j<count} p(q^(start + step*j) z)."""
    out = ZPoly([1])
    for j in range(count):
        out = out * p.subs_scaled(Scalar.qpow(start + step * j))
    return out


# ---------------------------------------------------------------------------
# coefficient plumbing for the kernel


def _common_den(scalars) -> tuple:
    """lcm of the q-adic-free parts of the denominators."""
    den = _zq.ONE
    for s in scalars:
        d = s.den
        v = _zq.valuation(d)
        d = d[v:]
        if d == den or d == _zq.ONE:
            continue
        g = _zq.gcd(den, d)
        den = _zq.mul(den, _zq.exact_div(d, g))
    return den


def _over(s: Scalar, den: tuple):
    """Write s = q^off * num / den with num in Z[q]; returns (num, off)."""
    num, v, d = s.laurent_split()
    if d != den:
        num = _zq.mul(num, _zq.exact_div(den, d))
    return num, -v


def _bits_for(bound: int) -> int:
    # whole bytes, so decoding can slice int.to_bytes
    return (max(bound.bit_length() + 2, 8) + 7) & ~7


def _mul_terms(ta: Mapping, tb: Mapping, ctx: AlgebraCtx) -> dict:
    if not ta or not tb:
        return {}
    den_a = _common_den(ta.values())
    den_b = _common_den(tb.values())
    a_raw = []
    for m, s in ta.items():
        num, off = _over(s, den_a)
        a_raw.append((m, num, off))
    b_raw = []
    for m, s in tb.items():
        num, off = _over(s, den_b)
        b_raw.append((m, num, off))
    a_ks = {m.k for m in ta}
    b_ks = {m.k for m in tb}
    entries = {}
    for k1 in a_ks:
        for k2 in b_ks:
            entries[(k1, k2)] = ctx._gentry(k1, k2)
    s_a = sum(_zq.norm1(n) for _, n, _ in a_raw)
    s_b = sum(_zq.norm1(n) for _, n, _ in b_raw)
    s_g = max(sum(_zq.norm1(n) for _, n, _ in e[1]) for e in entries.values())
    bits = _bits_for(s_a * s_b * s_g)

    a_items = [(m.k, m.zp, m.zm, _zq.encode(n, bits), off) for m, n, off in a_raw]
    groups: Dict[int, list] = {}
    for m, n, off in b_raw:
        groups.setdefault(m.k, []).append((m.zp, m.zm, _zq.encode(n, bits), off))
    b_groups = list(groups.items())

    min_oa = min(off for _, _, off in a_raw)
    min_ob = min(off for _, _, off in b_raw)
    smax = max(m.zp + m.zm for m in ta)
    kmin = min(b_ks)
    twist = min(0, smax * kmin)

    # pairs whose structure polynomial has a nontrivial denominator are
    # accumulated separately so each batch shares one denominator
    by_den: Dict[tuple, dict] = {}
    for key, (r, gterms, gden) in entries.items():
        by_den.setdefault(gden, {})[key] = (
            r,
            tuple((j, _zq.encode(n, bits), off) for j, n, off in gterms),
        )
    result: Dict[AMonomial, Scalar] = {}
    den_ab = _zq.mul(den_a, den_b)
    for gden, table in by_den.items():
        min_og = min(off for _, gt in table.values() for _, _, off in gt)
        emin = min_oa + min_ob + min_og + twist
        raw = kernel.product_accumulate(a_items, b_groups, table, bits, emin)
        den = _zq.mul(den_ab, gden)
        monomial_den = den == _zq.ONE
        for key, val in raw.items():
            if not val:
                continue
            num, v = kernel.decode_laurent(val, bits)
            e = emin + v
            if monomial_den:
                # num has nonzero constant term, so only q-powers can cancel
                s = Scalar(_zq.shift(num, e), _zq.ONE, _raw=True) if e >= 0 else \
                    Scalar(num, _zq.shift(_zq.ONE, -e), _raw=True)
            else:
                s = Scalar(_zq.shift(num, e), den) if e >= 0 else \
                    Scalar(num, _zq.shift(den, -e))
            mono = AMonomial(*kernel.unpack(key))
            if mono in result:
                s = result[mono] + s
                if not s:
                    del result[mono]
                    continue
            result[mono] = s
    return result


# ---------------------------------------------------------------------------
# shared element behaviour


class _Elem:
    __slots__ = ("terms", "ctx")

    def __init__(self, terms, ctx: AlgebraCtx):
        self.terms = {m: c for m, c in terms.items() if c}
        self.ctx = ctx

    def _new(self, terms):
        return type(self)(terms, self.ctx)

    def _check(self, other):
        if type(other) is not type(self):
            raise AlgebraError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (Scalar, int)):
            other = self._scalar_elem(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self._new(out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (Scalar, int)):
            other = self._scalar_elem(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: ScalarLike):
        c = as_scalar(c)
        if not c:
            return self._new({})
        if c.is_one():
            return self
        return self._new({m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (Scalar, int)):
            other = self._scalar_elem(other)
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, mono) -> Scalar:
        return self.terms.get(mono, ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def scalar_part(self) -> Optional[Scalar]:
        """The coefficient if this is a scalar multiple of 1, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if m.length == 0:
                return c
        return None

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class AlgElem(_Elem):
    """Element of A(p;q): sparse map AMonomial -> Scalar."""

    __slots__ = ()

    def _scalar_elem(self, c):
        return self.ctx.scalar(c)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        self._check(other)
        return AlgElem(_mul_terms(self.terms, other.terms, self.ctx), self.ctx)

    def __pow__(self, n: int):
        out = self.ctx.one
        for _ in range(n):
            out = out * self
        return out

    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def homogeneous_degree(self) -> Optional[int]:
        """Degree if homogeneous (0 for the zero element), else None."""
        ds = self.degrees()
        if not ds:
            return 0
        if len(ds) == 1:
            return next(iter(ds))
        return None

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        if not self.terms:
            return True
        d = self.homogeneous_degree()
        return d is not None and (degree is None or d == degree)

    def __str__(self):
        return format_terms(self.sorted_terms(), _a_mono_text)


class BElem(_Elem):
    """Element of B(p;q): sparse map BMonomial -> Scalar."""

    __slots__ = ()

    def _scalar_elem(self, c):
        return self.ctx.bscalar(c)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if not isinstance(other, BElem):
            return NotImplemented
        self._check(other)
        out: Dict[BMonomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, s in _b_mono_product(self.ctx, m1, m2):
                    v = out.get(m)
                    v = c * s if v is None else v + c * s
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return BElem(out, self.ctx)

    def __pow__(self, n: int):
        out = self.ctx.bscalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return format_terms(self.sorted_terms(), _b_mono_text)


def _b_mono_product(ctx: AlgebraCtx, m1: BMonomial, m2: BMonomial):
    key = (m1, m2)
    hit = ctx._bstruct.get(key)
    if hit is not None:
        return hit
    t1, a = m1
    t2, b = m2
    # z^a x^t2 = q^(-2 a t2) x^t2 z^a (signed t2 covers y)
    twist = Scalar.qpow(-2 * a * t2)
    r, g = b_x_product(ctx, t1, t2)
    out = tuple((BMonomial(r, a + b + j), twist * c) for j, c in enumerate(g.coeffs) if c)
    ctx._bstruct[key] = out
    return out


def b_x_product(ctx: AlgebraCtx, t1: int, t2: int):
    """x^t1 x^t2 = x^r G(z) in B(p;q) (negative powers mean y)."""
    if t1 == 0 or t2 == 0 or (t1 > 0) == (t2 > 0):
        return t1 + t2, ZPoly([1])
    p = ctx.p
    z = ZPoly([0, 1])
    if t1 > 0:  # x^a y^b with x y = q^2 z p(q^2 z)
        base = (z * p.subs_scaled(Q * Q)).scale(Q * Q)
        a, b = t1, -t2
        if a >= b:
            return a - b, _b_chain(base, b, 2)
        return -(b - a), _b_chain(base, a, 2).subs_scaled(Scalar.qpow(2 * (b - a)))
    base = z * p  # y x = z p(z)
    a, b = -t1, t2
    if a >= b:
        return -(a - b), _b_chain(base, b, -2)
    return b - a, _b_chain(base, a, -2).subs_scaled(Scalar.qpow(-2 * (b - a)))


def _b_chain(base: ZPoly, count: int, step: int) -> ZPoly:
    out = ZPoly([1])
    for j in range(count):
        out = out * base.subs_scaled(Scalar.qpow(step * j))
    return out


# ---------------------------------------------------------------------------
# printing


def _a_mono_text(m: AMonomial) -> str:
    parts = []
    if m.k:
        g = "x+" if m.k > 0 else "x-"
        parts.append(g if abs(m.k) == 1 else f"{g}^{abs(m.k)}")
    if m.zp:
        parts.append("z+" if m.zp == 1 else f"z+^{m.zp}")
    if m.zm:
        parts.append("z-" if m.zm == 1 else f"z-^{m.zm}")
    return "*".join(parts)


def _b_mono_text(m: BMonomial) -> str:
    parts = []
    if m.t:
        g = "x" if m.t > 0 else "y"
        parts.append(g if abs(m.t) == 1 else f"{g}^{abs(m.t)}")
    if m.m:
        parts.append("z" if m.m == 1 else f"z^{m.m}")
    return "*".join(parts)


def format_terms(items, mono_text) -> str:
    from .scalars import _join_terms, _term_text

    parts = [_term_text(c, mono_text(m)) for m, c in items]
    return _join_terms(parts)


# ---------------------------------------------------------------------------
# public operations


def normalize(word: Sequence[str], ctx: AlgebraCtx, coeff: ScalarLike = 1,
              strategy: str = "closed-form", rng=None) -> AlgElem:
    """Normal form of coeff * (product of the generators in ``word``).

    ``strategy`` selects the closed-form product ("closed-form") or the naive
    word rewriter ("leftmost", "rightmost", "random").
    """
    if strategy == "closed-form":
        out = ctx.scalar(coeff)
        for g in word:
            out = out * ctx.gen(g)
        return out
    from .rewrite import rewrite_word

    return rewrite_word(word, ctx, coeff, strategy=strategy, rng=rng)


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a * b


def grade_decompose(a: AlgElem) -> Dict[int, AlgElem]:
    parts: Dict[int, dict] = {}
    for m, c in a.terms.items():
        parts.setdefault(m.degree, {})[m] = c
    return {d: AlgElem(t, a.ctx) for d, t in sorted(parts.items())}


def homogeneous_part(a: AlgElem, degree: int) -> AlgElem:
    return AlgElem({m: c for m, c in a.terms.items() if m.degree == degree}, a.ctx)


def theta_monomial(ctx: AlgebraCtx, m: BMonomial) -> AlgElem:
    hit = ctx._theta_cache.get(m)
    if hit is None:
        x = ctx.gen("x-") * ctx.gen("z+")
        y = ctx.gen("z-") * ctx.gen("x+")
        z = ctx.gen("z-") * ctx.gen("z+")
        hit = (x if m.t > 0 else y) ** abs(m.t) * z ** m.m
        ctx._theta_cache[m] = hit
    return hit


def theta(b: BElem) -> AlgElem:
    """The isomorphism B(p;q) -> A(p;q)_0: x -> x- z+, y -> z- x+, z -> z- z+."""
    ctx = b.ctx
    out: Dict[AMonomial, Scalar] = {}
    for m, c in b.terms.items():
        img = theta_monomial(ctx, m)
        for am, s in img.terms.items():
            v = out.get(am, ZERO) + c * s
            if v:
                out[am] = v
            else:
                out.pop(am, None)
    return AlgElem(out, ctx)


def _theta_preimage(ctx: AlgebraCtx, am: AMonomial):
    hit = ctx._theta_inv.get(am)
    if hit is None:
        if am.degree != 0:
            raise AlgebraError("theta_inverse needs a degree-0 element")
        if am.k > 0:  # x+^n z+^a z-^(n+a) <- y^n z^a
            bm = BMonomial(-am.k, am.zp)
        elif am.k < 0:  # x-^n z+^(n+b) z-^b <- x^n z^b
            bm = BMonomial(-am.k, am.zm)
        else:
            bm = BMonomial(0, am.zp)
        img = theta_monomial(ctx, bm)
        c = img.terms.get(am)
        if len(img.terms) != 1 or c is None:
            raise AlgebraError(f"unexpected image of {bm} under theta")
        hit = (bm, c.inverse())
        ctx._theta_inv[am] = hit
    return hit


def theta_inverse(a: AlgElem) -> BElem:
    ctx = a.ctx
    if not a.is_homogeneous(0):
        raise AlgebraError("theta_inverse needs a degree-0 element")
    out = {}
    for am, c in a.terms.items():
        bm, s = _theta_preimage(ctx, am)
        out[bm] = c * s
    return BElem(out, ctx)


def star(a: AlgElem) -> AlgElem:
    """Antimultiplicative involution with z-* = z+, x-* = x+ (q real)."""
    ctx = a.ctx
    out = ctx.zero
    for m, c in a.terms.items():
        # (x^k z+^zp z-^zm)* = z+^zm z-^zp x^(-k)
        img = ctx.monomial(0, m.zm, m.zp) * ctx.monomial(-m.k, 0, 0)
        out = out + img.scale(c.conj())
    return out


def star_b(b: BElem) -> BElem:
    """x* = y, z* = z, extended antimultiplicatively."""
    ctx = b.ctx
    out = ctx.bscalar(0)
    for m, c in b.terms.items():
        img = BElem({BMonomial(0, m.m): ONE}, ctx) * BElem({BMonomial(-m.t, 0): ONE}, ctx)
        out = out + img.scale(c.conj())
    return out


def a_basis(max_length: int, degree: Optional[int] = None):
    """Normal-form monomials of word length <= max_length, sorted."""
    out = []
    for k in range(-max_length, max_length + 1):
        for zp in range(max_length - abs(k) + 1):
            for zm in range(max_length - abs(k) - zp + 1):
                m = AMonomial(k, zp, zm)
                if degree is None or m.degree == degree:
                    out.append(m)
    return sorted(out, key=AMonomial.sort_key)


def b_basis(max_length: int):
    out = []
    for t in range(-max_length, max_length + 1):
        for m in range(max_length - abs(t) + 1):
            out.append(BMonomial(t, m))
    return sorted(out, key=BMonomial.sort_key)
