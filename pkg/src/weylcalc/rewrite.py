"""Naive word rewriting for A(p;q).

This is the cross-check oracle for the closed-form product: it applies the
defining relations one adjacent pair at a time, in an order chosen by the
strategy, until every word is irreducible.
"""

from __future__ import annotations

import random
from typing import Sequence

from .algebra import AlgElem, AlgebraCtx, AMonomial
from .scalars import ONE, Scalar, as_scalar

_Q = Scalar.qpow(1)
_QI = Scalar.qpow(-1)


def _rules(ctx: AlgebraCtx):
    p = ctx.p
    xpxm = []  # x+ x- -> p(z+ z-)
    xmxp = []  # x- x+ -> p(q^2 z- z+)
    for k, c in enumerate(p.coeffs):
        if c:
            xpxm.append((("z+", "z-") * k, c))
            xmxp.append((("z-", "z+") * k, c * Scalar.qpow(2 * k)))
    return {
        ("z-", "z+"): ((("z+", "z-"), ONE),),
        ("z+", "x+"): ((("x+", "z+"), _Q),),
        ("z-", "x+"): ((("x+", "z-"), _Q),),
        ("z+", "x-"): ((("x-", "z+"), _QI),),
        ("z-", "x-"): ((("x-", "z-"), _QI),),
        ("x+", "x-"): tuple(xpxm),
        ("x-", "x+"): tuple(xmxp),
    }


def _redexes(word, rules):
    return [i for i in range(len(word) - 1) if (word[i], word[i + 1]) in rules]


def rewrite_word(word: Sequence[str], ctx: AlgebraCtx, coeff=1,
                 strategy: str = "leftmost", rng=None) -> AlgElem:
    for g in word:
        if g not in ("x+", "x-", "z+", "z-"):
            raise ValueError(f"unknown generator {g!r} for algebra A")
    rules = _rules(ctx)
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    coeff = as_scalar(coeff)
    done = {}
    stack = [(tuple(word), coeff)]
    while stack:
        w, c = stack.pop()
        reds = _redexes(w, rules)
        if not reds:
            done[w] = done.get(w, Scalar()) + c
            continue
        if strategy == "leftmost":
            i = reds[0]
        elif strategy == "rightmost":
            i = reds[-1]
        elif strategy == "random":
            i = rng.choice(reds)
        else:
            raise ValueError(f"unknown rewrite strategy {strategy!r}")
        for repl, s in rules[(w[i], w[i + 1])]:
            stack.append((w[:i] + repl + w[i + 2:], c * s))
    terms = {}
    for w, c in done.items():
        if not c:
            continue
        m = _word_monomial(w)
        terms[m] = terms.get(m, Scalar()) + c
    return AlgElem(terms, ctx)


def _word_monomial(w) -> AMonomial:
    k = zp = zm = 0
    for g in w:
        if g == "x+":
            k += 1
        elif g == "x-":
            k -= 1
        elif g == "z+":
            zp += 1
        else:
            zm += 1
    return AMonomial(k, zp, zm)
