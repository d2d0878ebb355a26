"""Exact coefficients: the rational function field Q(q) and polynomials over it.

``Scalar`` is a reduced fraction of integer polynomials in the formal
parameter q.  ``ZPoly`` is a polynomial in one central variable z with
``Scalar`` coefficients; it carries p(z), its q-derivatives and the Bezout
certificates used elsewhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import NamedTuple, Optional, Sequence, Union

from . import _zq


class DegenerateError(ValueError):
    """Raised when an operation hits a degenerate parameter value."""


class Scalar:
    """An element num(q)/den(q) of Q(q) in lowest terms.

    The denominator has positive leading coefficient and zero is stored as
    0/1.  Instances are immutable and hashable.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,), *, _raw=False):
        if isinstance(num, int):
            num = (num,) if num else ()
        if isinstance(den, int):
            den = (den,)
        if not _raw:
            num, den = _reduce(_zq.trim(num), _zq.trim(den))
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_value(cls, v) -> "Scalar":
        if isinstance(v, Scalar):
            return v
        if isinstance(v, bool):
            v = int(v)
        if isinstance(v, int):
            return _int_scalar(v)
        if isinstance(v, Fraction):
            return cls((v.numerator,), (v.denominator,))
        raise TypeError(f"cannot convert {type(v).__name__} to Scalar")

    @classmethod
    def qpow(cls, k: int) -> "Scalar":
        """q**k for any integer k."""
        if k >= 0:
            return cls((0,) * k + (1,), (1,), _raw=True)
        return cls((1,), (0,) * (-k) + (1,), _raw=True)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def is_constant(self) -> bool:
        """True when the value does not depend on q (an element of Q)."""
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == (1,):
                return Scalar(_zq.add(self.num, other.num), (1,), _raw=True)
            return Scalar(_zq.add(self.num, other.num), self.den)
        n = _zq.add(_zq.mul(self.num, other.den), _zq.mul(other.num, self.den))
        return Scalar(n, _zq.mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_zq.neg(self.num), self.den, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if self.den == (1,) and other.den == (1,):
            return Scalar(_zq.mul(self.num, other.num), (1,), _raw=True)
        return Scalar(_zq.mul(self.num, other.num), _zq.mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _zq.neg(num), _zq.neg(den)
        return Scalar(num, den, _raw=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(_zq.power(self.num, k), _zq.power(self.den, k), _raw=True)

    def conj(self) -> "Scalar":
        # q is real and the coefficients are rational: the involution is trivial
        return self

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_constant():
                h = hash(self.to_fraction())
            else:
                h = hash((self.num, self.den))
            self._hash = h
        return h

    # -- evaluation -------------------------------------------------------
    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on q")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    def specialize(self, q0) -> Fraction:
        """Value at q = q0 (a nonzero rational)."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise DegenerateError("specialization point must be nonzero")
        d = _zq.evaluate(self.den, q0)
        if d == 0:
            raise DegenerateError("pole at specialization point")
        return Fraction(_zq.evaluate(self.num, q0)) / d

    def laurent_split(self):
        """Return (numerator, v, reduced denominator) with den = q^v * reduced."""
        v = _zq.valuation(self.den)
        return self.num, v, self.den[v:]

    # -- printing ---------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _reduce(num, den):
    if not den:
        raise ZeroDivisionError("Scalar with zero denominator")
    if not num:
        return (), (1,)
    if len(den) == 1 and den[0] == 1:
        return num, den
    if den[-1] < 0:
        num, den = _zq.neg(num), _zq.neg(den)
    if all(c == 0 for c in den[:-1]):
        # den = c*q^v: the gcd is an integer times a power of q
        v = min(len(den) - 1, _zq.valuation(num))
        g = igcd(_zq.content(num), den[-1])
        if v:
            num = num[v:]
            den = den[v:]
        if g != 1:
            num = tuple(c // g for c in num)
            den = tuple(c // g for c in den)
        return num, den
    g = _zq.gcd(num, den)
    if g != (1,):
        num = _zq.exact_div(num, g)
        den = _zq.exact_div(den, g)
    return num, den


_INT_CACHE = {}


def _int_scalar(v: int) -> Scalar:
    s = _INT_CACHE.get(v)
    if s is None:
        s = Scalar((v,) if v else (), (1,), _raw=True)
        if -64 <= v <= 64:
            _INT_CACHE[v] = s
    return s


def _coerce(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, Fraction)):
        return Scalar.from_value(v)
    return NotImplemented


ZERO = Scalar((), (1,), _raw=True)
ONE = Scalar((1,), (1,), _raw=True)
Q = Scalar((0, 1), (1,), _raw=True)

ScalarLike = Union[Scalar, int, Fraction]


def as_scalar(v: ScalarLike) -> Scalar:
    return Scalar.from_value(v)


def _poly_text(c):
    return _zq.to_str(c, "q")


def _atom(text, poly):
    """Parenthesize a polynomial unless it is a single signed term."""
    nonzero = sum(1 for v in poly if v)
    if nonzero <= 1 and not text.startswith("-"):
        return text
    return f"({text})"


def format_scalar(s: Scalar) -> str:
    if s.den == (1,):
        return _poly_text(s.num)
    den = _poly_text(s.den)
    # a product such as 2*q^3 binds looser than "/" on the right
    if "*" in den:
        den = f"({den})"
    else:
        den = _atom(den, s.den)
    return f"{_atom(_poly_text(s.num), s.num)}/{den}"


def q_integer(l: int) -> Scalar:
    """The q^2-integer [l] = 1 + q^2 + ... + q^(2l-2); [0] = 0."""
    if l < 0:
        raise ValueError("q-integer index must be a natural number")
    coeffs = [0] * (2 * l - 1) if l else []
    for i in range(l):
        coeffs[2 * i] = 1
    return Scalar(tuple(coeffs), (1,), _raw=True)


def specialize(s: Scalar, q0) -> Fraction:
    return as_scalar(s).specialize(q0)


def check_q_integers(q0, indices) -> None:
    """Guard for numeric work near roots of unity: every [l] must be nonzero."""
    for l in indices:
        if l > 0 and q_integer(l).specialize(q0) == 0:
            raise DegenerateError("root-of-unity degeneracy")


# ---------------------------------------------------------------------------
# polynomials in z over Q(q)


class ZPoly:
    """Polynomial in z with Scalar coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Sequence[ScalarLike] = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def constant(cls, c: ScalarLike) -> "ZPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: ScalarLike = 1) -> "ZPoly":
        return cls([0] * k + [c])

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, ZPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (Scalar, int, Fraction)):
            return self.coeffs == ZPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _zcoerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _zcoerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _zcoerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _zcoerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ZPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: ScalarLike) -> "ZPoly":
        c = as_scalar(c)
        return ZPoly([c * a for a in self.coeffs])

    def divmod(self, other: "ZPoly"):
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        inv = other.lc().inverse()
        quot = [ZERO] * max(len(r) - db, 0)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[i + k] = r[i + k] - c * b
        return ZPoly(quot), ZPoly(r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(_zcoerce(other))[0]

    def __mod__(self, other):
        return self.divmod(_zcoerce(other))[1]

    def exact_div(self, other: "ZPoly") -> "ZPoly":
        quot, rem = self.divmod(other)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return quot

    def monic(self) -> "ZPoly":
        if not self.coeffs:
            return self
        return self.scale(self.lc().inverse())

    def subs_scaled(self, lam: ScalarLike) -> "ZPoly":
        """p(lam * z)."""
        lam = as_scalar(lam)
        out = []
        power = ONE
        for c in self.coeffs:
            out.append(c * power)
            power = power * lam
        return ZPoly(out)

    def __call__(self, z: ScalarLike) -> Scalar:
        z = as_scalar(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def shift_down(self) -> "ZPoly":
        """(p(z) - p(0)) / z."""
        return ZPoly(self.coeffs[1:])

    def specialize(self, q0) -> list:
        return [c.specialize(q0) for c in self.coeffs]

    def __str__(self):
        return format_zpoly(self, "z")

    def __repr__(self):
        return f"ZPoly({format_zpoly(self, 'z')!r})"


def _zcoerce(v):
    if isinstance(v, ZPoly):
        return v
    if isinstance(v, (Scalar, int, Fraction)):
        return ZPoly([v])
    return NotImplemented


Z = ZPoly([0, 1])


def format_zpoly(p: ZPoly, var: str = "z") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append(_term_text(c, mon))
    return _join_terms(parts)


def _term_text(c: Scalar, mon: str):
    """(sign, body) for coefficient c times monomial text mon."""
    neg = False
    if len([v for v in c.num if v]) == 1 and c.num[-1] < 0:
        neg = True
        c = -c
    if not mon:
        return neg, format_scalar(c)
    if c.is_one():
        return neg, mon
    text = format_scalar(c)
    if len([v for v in c.num if v]) > 1 and c.den == (1,):
        text = f"({text})"
    elif c.den != (1,) and not text.startswith("("):
        text = f"({text})"
    return neg, f"{text}*{mon}"


def _join_terms(parts) -> str:
    out = ""
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


# ---------------------------------------------------------------------------
# q-derivatives, separability and Bezout certificates


def q_derivative(p: ZPoly, base: ScalarLike) -> ZPoly:
    """(p(base*z) - p(z)) / ((base - 1) z)."""
    base = as_scalar(base)
    if base == ONE:
        raise DegenerateError("degenerate q-derivative base")
    inv = (base - 1).inverse()
    out = []
    power = base
    # coefficient of z^k in p contributes c*(base^k - 1)/(base - 1) z^(k-1)
    for k in range(1, len(p.coeffs)):
        out.append(p.coeffs[k] * (power - 1) * inv)
        power = power * base
    return ZPoly(out)


def c_poly(p: ZPoly) -> ZPoly:
    """c(z) = q * p_{q^2}(z)."""
    return q_derivative(p, Q * Q).scale(Q)


def poly_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Monic gcd over Q(q); gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: ZPoly, b: ZPoly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = ZPoly([1]), ZPoly()
    t0, t1 = ZPoly(), ZPoly([1])
    while r1:
        quot, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if not r0:
        return r0, s0, t0
    inv = r0.lc().inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


class Separability(NamedTuple):
    """Outcome of the q^2-separability test with Bezout certificates.

    When ``separable`` is true: f*p + g*z*p_{q^2} = 1 and f0*z + g0*p = 1.
    """

    separable: bool
    gcd: ZPoly
    f: Optional[ZPoly] = None
    g: Optional[ZPoly] = None
    f0: Optional[ZPoly] = None
    g0: Optional[ZPoly] = None


def is_q2_separable(p: ZPoly) -> Separability:
    if not p:
        raise ValueError("zero polynomial has no separability")
    zdp = Z * q_derivative(p, Q * Q)
    g, f, gg = poly_xgcd(p, zdp)
    if g.degree != 0:
        return Separability(False, g)
    g0z, f0, g0 = poly_xgcd(Z, p)
    if g0z.degree != 0:  # p(0) == 0 would already have failed above
        return Separability(False, g0z)
    return Separability(True, g, f, gg, f0, g0)
