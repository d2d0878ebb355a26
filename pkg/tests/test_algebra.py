import random

import pytest
from hypothesis import given, strategies as st

from weylcalc import AlgebraCtx, Q, Scalar, ZPoly, kernel, normalize, parse_poly, star, theta, theta_inverse
from weylcalc.algebra import AMonomial, AlgebraError, BMonomial, BElem, grade_decompose, star_b
from weylcalc.rewrite import rewrite_word
from weylcalc.scalars import ONE

from conftest import A

GENS = ("x+", "x-", "z+", "z-")
COEFFS = (1, -1, 2, Q, Scalar.qpow(-1), Q * Q + 1)

words = st.lists(st.sampled_from(GENS), max_size=6).map(tuple)


@st.composite
def elements(draw, ctx, max_len=3, max_terms=3):
    out = ctx.zero
    for _ in range(draw(st.integers(1, max_terms))):
        w = draw(st.lists(st.sampled_from(GENS), max_size=max_len))
        c = draw(st.sampled_from(COEFFS))
        out = out + normalize(w, ctx, c)
    return out


def by_rewriting(a, b):
    """Product oracle: concatenate monomial words and rewrite naively."""
    out = a.ctx.zero
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            out = out + rewrite_word(m1.word() + m2.word(), a.ctx, c1 * c2)
    return out


CTX = AlgebraCtx(parse_poly("z^2-1"))
CTX_CUBIC = AlgebraCtx(parse_poly("z^3-q*z+2"))


def test_commutation_examples(ctx2):
    assert A("z+*x+", ctx2) == A("q*x+*z+", ctx2)
    assert A("x+*x-", ctx2) == ctx2.monomial(0, 2, 2) - ctx2.one
    assert A("x-*x+", ctx2) == ctx2.monomial(0, 2, 2, Q**4) - ctx2.one
    assert A("z-", ctx2) * A("z+", ctx2) == ctx2.monomial(0, 1, 1)
    assert ctx2.one * A("x+*z-", ctx2) == A("x+*z-", ctx2)


@pytest.mark.parametrize("ctx", [CTX, CTX_CUBIC], ids=["z^2-1", "cubic"])
@given(data=st.data())
def test_product_matches_rewriting(ctx, data):
    a = data.draw(elements(ctx))
    b = data.draw(elements(ctx))
    assert a * b == by_rewriting(a, b)


@given(elements(CTX), elements(CTX), elements(CTX))
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words, st.sampled_from(["leftmost", "rightmost", "random"]))
def test_strategies_agree(w, strategy):
    assert rewrite_word(w, CTX, strategy=strategy, rng=random.Random(1)) == normalize(w, CTX)


def test_grade_examples(ctx2):
    parts = grade_decompose(A("x+ + z-", ctx2))
    assert parts == {1: A("x+", ctx2), -1: A("z-", ctx2)}
    assert grade_decompose(A("x-*z+", ctx2)) == {0: A("x-*z+", ctx2)}


@given(st.lists(st.sampled_from(GENS), max_size=4), st.lists(st.sampled_from(GENS), max_size=4))
def test_degree_additive(u, v):
    a, b = normalize(u, CTX), normalize(v, CTX)
    prod = a * b
    if prod:
        assert prod.homogeneous_degree() == a.homogeneous_degree() + b.homogeneous_degree()


def test_theta_examples(ctx2):
    x, y, z = (ctx2.bgen(g) for g in "xyz")
    assert theta(z) == ctx2.monomial(0, 1, 1)
    assert theta(x) == A("x-*z+", ctx2)
    assert theta(y) == A("z-*x+", ctx2)
    # x y = q^2 z p(q^2 z) transported to A
    rhs = ctx2.bzpoly(ZPoly([0, -Q**2, 0, Q**6]))
    assert theta(x) * theta(y) == theta(rhs)
    assert x * y == rhs


@given(st.lists(st.sampled_from("xyz"), max_size=5), st.lists(st.sampled_from("xyz"), max_size=5))
def test_theta_homomorphism_and_inverse(u, v):
    ctx = CTX
    bu = ctx.bscalar(1)
    for g in u:
        bu = bu * ctx.bgen(g)
    bv = ctx.bscalar(1)
    for g in v:
        bv = bv * ctx.bgen(g)
    assert theta(bu * bv) == theta(bu) * theta(bv)
    assert theta_inverse(theta(bu)) == bu


def test_theta_inverse_rejects_nonzero_degree(ctx2):
    with pytest.raises(AlgebraError):
        theta_inverse(A("x+", ctx2))


def test_star_examples(ctx2):
    assert star(A("x-", ctx2)) == A("x+", ctx2)
    assert star(A("z-", ctx2)) == A("z+", ctx2)
    # z- x- in normal form is q^-1 x- z-
    assert star(A("x+*z+", ctx2)) == A("(1/q)*x-*z-", ctx2)


@given(elements(CTX), elements(CTX))
def test_star_antimultiplicative_involution(a, b):
    assert star(star(a)) == a
    assert star(a * b) == star(b) * star(a)


def test_star_b_matches_theta(ctx2):
    for m in (BMonomial(1, 0), BMonomial(-2, 1), BMonomial(1, 2)):
        b = BElem({m: ONE}, ctx2)
        assert theta(star_b(b)) == star(theta(b))


def test_backends_agree():
    rng = random.Random(3)
    ctx = AlgebraCtx(parse_poly("z^2-1"))
    terms = {}
    for _ in range(30):
        m = AMonomial(rng.randint(-6, 6), rng.randint(0, 6), rng.randint(0, 6))
        terms[m] = Scalar.qpow(rng.randint(-2, 2)) * rng.choice((1, -3, 5))
    a = ctx.zero
    for m, c in terms.items():
        a = a + ctx.monomial(*m, c)
    results = []
    before = kernel.BACKEND
    try:
        for name in kernel.available_backends():
            kernel.use_backend(name)
            results.append((a * a * a).terms)
    finally:
        kernel.use_backend(before)
    assert all(r == results[0] for r in results)


def test_pack_roundtrip():
    for k, zp, zm in [(0, 0, 0), (-500, 3, 900), (1000, 1000, 0)]:
        assert kernel.unpack(kernel.pack(k, zp, zm)) == (k, zp, zm)


def test_constant_p():
    ctx = AlgebraCtx(ZPoly([3]))
    assert A("x+*x-", ctx) == ctx.scalar(3)
    assert A("x-*x+", ctx) == ctx.scalar(3)


def test_pure_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, WEYLCALC_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from weylcalc import kernel; print(kernel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
