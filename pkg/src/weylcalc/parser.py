"""Recursive-descent parser for scalars, polynomials and algebra elements.

Grammar (precedence ^ > * / > + -)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' NATURAL)?
    atom   := NATURAL | 'q' | generator | '(' expr ')'

Generators depend on the mode: ``x+ x- z+ z-`` for A, ``x y z`` for B,
``z`` for polynomials, plus ``s+ s-`` (spinor) or ``w- w0 w+`` (omega).
Division is allowed only by scalar expressions.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple, Optional

from .algebra import AlgElem, AlgebraCtx, BElem
from .calculus import OmegaElem, right_act
from .scalars import Q, Scalar, ZPoly
from .spin import SpinError, Spinor

MODES = ("scalar", "poly", "A", "B", "spinor", "omega")

_GEN_PATTERNS = {
    "scalar": None,
    "poly": r"z",
    "A": r"[xz][+-]",
    "B": r"[xyz]",
    "spinor": r"[xz][+-]|s[+-]",
    "omega": r"[xz][+-]|w[-0+]",
}


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class Token(NamedTuple):
    kind: str  # num, q, gen, op, end
    text: str
    pos: int


def tokenize(text: str, mode: str) -> List[Token]:
    gen = _GEN_PATTERNS[mode]
    parts = [r"(?P<ws>\s+)", r"(?P<num>\d+)", r"(?P<q>q)"]
    if gen:
        parts.append(f"(?P<gen>{gen})")
    parts.append(r"(?P<op>[-+*/^()])")
    rx = re.compile("|".join(parts))
    out = []
    pos = 0
    while pos < len(text):
        m = rx.match(text, pos)
        if not m:
            word = re.match(r"[A-Za-z_][\w+-]?", text[pos:])
            if word:
                raise ParseError(f"unknown generator {word.group(0)!r} for mode {mode}", pos)
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(0), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _SpinBasis:
    def __init__(self, sign: str):
        self.sign = sign


class _Domain:
    def __init__(self, mode: str, ctx: Optional[AlgebraCtx]):
        self.mode = mode
        self.ctx = ctx
        if mode in ("A", "B", "spinor", "omega") and ctx is None:
            raise ValueError(f"mode {mode} needs an algebra context")

    def gen(self, name: str):
        if self.mode == "poly":
            return ZPoly([0, 1])
        if self.mode == "B":
            return self.ctx.bgen(name)
        if name in ("s+", "s-"):
            return _SpinBasis(name[1])
        if name.startswith("w"):
            return OmegaElem.basis(self.ctx, {"-": "minus", "0": "zero", "+": "plus"}[name[1]])
        return self.ctx.gen(name)

    def lift(self, v):
        """Scalar -> element of the mode's base ring."""
        if not isinstance(v, Scalar):
            return v
        if self.mode == "poly":
            return ZPoly.constant(v)
        if self.mode == "B":
            return self.ctx.bscalar(v)
        if self.mode in ("A", "spinor", "omega"):
            return self.ctx.scalar(v)
        return v

    def add(self, a, b):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        a, b = self.lift(a), self.lift(b)
        if type(a) is not type(b):
            raise TypeError(f"cannot add {_kind(a)} and {_kind(b)}")
        return a + b

    def neg(self, a):
        if isinstance(a, _SpinBasis):
            a = self.spinor(a)
        return -a

    def spinor(self, basis: _SpinBasis, coeff=None) -> Spinor:
        coeff = self.ctx.one if coeff is None else coeff
        zero = self.ctx.zero
        return Spinor(coeff, zero) if basis.sign == "+" else Spinor(zero, coeff)

    def mul(self, a, b):
        if isinstance(a, Scalar):
            if isinstance(b, Scalar):
                return a * b
            if isinstance(b, _SpinBasis):
                return self.spinor(b, self.ctx.scalar(a))
            return b.scale(a) if not isinstance(b, ZPoly) else b.scale(a)
        if isinstance(b, Scalar):
            if isinstance(a, _SpinBasis):
                return self.spinor(a, self.ctx.scalar(b))
            return a.scale(b)
        if isinstance(a, ZPoly) and isinstance(b, ZPoly):
            return a * b
        if isinstance(a, AlgElem):
            if isinstance(b, AlgElem):
                return a * b
            if isinstance(b, OmegaElem):
                return b.left(a)
            if isinstance(b, _SpinBasis):
                return self.spinor(b, a)
            if isinstance(b, Spinor):
                return b.left(a)
        if isinstance(a, BElem) and isinstance(b, BElem):
            return a * b
        if isinstance(a, OmegaElem) and isinstance(b, AlgElem):
            return right_act(a, b)
        if isinstance(a, Spinor) and isinstance(b, AlgElem):
            return Spinor(a.plus * b, a.minus * b)
        raise TypeError(f"cannot multiply {_kind(a)} by {_kind(b)}")

    def power(self, a, n: int):
        if isinstance(a, (Scalar, ZPoly, AlgElem, BElem)):
            return a ** n
        raise TypeError(f"cannot raise {_kind(a)} to a power")

    def finish(self, v):
        if isinstance(v, _SpinBasis):
            v = self.spinor(v)
        if self.mode == "spinor" and isinstance(v, (Scalar, AlgElem)):
            if not (isinstance(v, AlgElem) and not v) and not (isinstance(v, Scalar) and not v):
                raise TypeError("spinor expressions must have the form <expr>*s+ + <expr>*s-")
            return Spinor.zero(self.ctx)
        if self.mode == "omega" and isinstance(v, (Scalar, AlgElem)):
            if v:
                raise TypeError("one-form expressions need w-, w0 or w+")
            return OmegaElem.zero_form(self.ctx)
        return self.lift(v)


def _kind(v) -> str:
    return {Scalar: "scalar", ZPoly: "polynomial", AlgElem: "A element", BElem: "B element",
            OmegaElem: "one-form", Spinor: "spinor", _SpinBasis: "spinor basis"}.get(type(v), type(v).__name__)


class _Parser:
    def __init__(self, text: str, mode: str, ctx: Optional[AlgebraCtx]):
        if mode not in MODES:
            raise ValueError(f"unknown parse mode {mode!r}")
        self.toks = tokenize(text, mode)
        self.i = 0
        self.dom = _Domain(mode, ctx)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str):
        if self.tok.text != text:
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}",
                             self.tok.pos)
        self.take()

    def _apply(self, fn, pos, *args):
        try:
            return fn(*args)
        except (TypeError, ArithmeticError, ZeroDivisionError, SpinError, ValueError) as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), pos) from None

    def parse(self):
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        v = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return self._apply(self.dom.finish, 0, v)

    def expr(self):
        v = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take()
            w = self.term()
            if op.text == "-":
                w = self._apply(self.dom.neg, op.pos, w)
            v = self._apply(self.dom.add, op.pos, v, w)
        return v

    def term(self):
        v = self.factor()
        while self.tok.text in ("*", "/"):
            op = self.take()
            w = self.factor()
            if op.text == "*":
                v = self._apply(self.dom.mul, op.pos, v, w)
            else:
                if not isinstance(w, Scalar):
                    raise ParseError("division is only allowed by scalars", op.pos)
                if not w:
                    raise ParseError("division by zero", op.pos)
                v = self._apply(self.dom.mul, op.pos, v, w.inverse())
        return v

    def factor(self):
        if self.tok.text in ("+", "-"):
            op = self.take()
            v = self.factor()
            return self._apply(self.dom.neg, op.pos, v) if op.text == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        if self.tok.text == "^":
            op = self.take()
            t = self.take()
            if t.kind != "num":
                raise ParseError("exponent must be a natural number", t.pos)
            v = self._apply(self.dom.power, op.pos, v, int(t.text))
        return v

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return Scalar.from_value(int(t.text))
        if t.kind == "q":
            return Q
        if t.kind == "gen":
            return self._apply(self.dom.gen, t.pos, t.text)
        if t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse_expr(text: str, algebra: str = "A", ctx: Optional[AlgebraCtx] = None):
    """Parse text in the given mode; algebra elements come back normalized."""
    return _Parser(text, algebra, ctx).parse()


def parse_scalar(text: str) -> Scalar:
    return parse_expr(text, "scalar")


def parse_poly(text: str) -> ZPoly:
    return parse_expr(text, "poly")
