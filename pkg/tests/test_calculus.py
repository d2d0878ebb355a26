import pytest
from hypothesis import given, strategies as st

from weylcalc import AlgebraCtx, DerivParams, OmegaElem, Q, d, normalize, parse_poly, star, theta
from weylcalc.algebra import NotRegularError
from weylcalc.calculus import (
    BAR_TARGETS,
    BarWitness,
    CalculusError,
    bar_omega_witness,
    bar_target_form,
    density_witness,
    horizontal,
    restrict_to_B,
    right_act,
    solve_density,
    star_omega,
)

from conftest import A

GENS = ("x+", "x-", "z+", "z-")
words = st.lists(st.sampled_from(GENS), max_size=4).map(tuple)
SLOT = {"w-": "minus", "w0": "zero", "w+": "plus"}


def w(ctx, slot):
    return OmegaElem.basis(ctx, slot)


def test_right_action_examples(ctx2):
    assert right_act(w(ctx2, "minus"), A("z+", ctx2)) == w(ctx2, "minus").left(A("q*z+", ctx2))
    assert right_act(w(ctx2, "zero"), A("x-", ctx2)) == w(ctx2, "zero").left(A("(1/q^2)*x-", ctx2))
    form = w(ctx2, "plus").left(A("x+*z-", ctx2))
    assert right_act(form, ctx2.one) == form


def test_d_examples(ctx2):
    assert d(A("z+", ctx2)) == w(ctx2, "zero").left(A("z+", ctx2)) + w(ctx2, "plus").left(A("x-", ctx2))
    assert d(ctx2.one).is_zero()
    # alpha- z+ x+ w- + alpha+ z- x- w+
    dz = d(theta(ctx2.bgen("z")))
    assert dz == w(ctx2, "minus").left(A("q*z+*x+", ctx2)) + w(ctx2, "plus").left(A("z-*x-", ctx2))
    assert star_omega(w(ctx2, "zero")) == -w(ctx2, "zero")
    assert horizontal(d(A("z+", ctx2))) == w(ctx2, "plus").left(A("x-", ctx2))


def test_restriction_examples(ctx2):
    c = ctx2.zpoly(ctx2.c)
    zp, zm = A("z+", ctx2), A("z-", ctx2)
    mx, px = restrict_to_B(d(theta(ctx2.bgen("x"))))
    assert mx == (c * zp * zp).scale(Q * Q) and px == A("x-^2", ctx2)
    my, py = restrict_to_B(d(theta(ctx2.bgen("y"))))
    assert my == A("q^2*x+^2", ctx2) and py == c * zm * zm
    assert restrict_to_B(d(ctx2.one)) == (ctx2.zero, ctx2.zero)
    with pytest.raises(CalculusError):
        restrict_to_B(w(ctx2, "zero"))


@given(words, words)
def test_d_leibniz(ctx2, u, v):
    a, b = normalize(u, ctx2), normalize(v, ctx2)
    assert d(a * b) == right_act(d(a), b) + d(b).left(a)


@given(words, words, words)
def test_bimodule(ctx2, u, v, t):
    a, b, c = (normalize(x, ctx2) for x in (u, v, t))
    form = d(c)
    assert right_act(form.left(a), b) == right_act(form, b).left(a)
    assert right_act(right_act(form, a), b) == right_act(form, a * b)


@given(words)
def test_star_compatibility(ctx2, u):
    a = normalize(u, ctx2)
    assert d(star(a)) == star_omega(d(a))
    assert star_omega(star_omega(d(a))) == d(a)


def test_star_needs_compatible_parameters(ctx2):
    with pytest.raises(CalculusError):
        star_omega(w(ctx2, "zero"), DerivParams(alpha_minus=2))


@given(st.lists(st.sampled_from("xyz"), max_size=4))
def test_horizontal_on_b(ctx2, u):
    b = ctx2.bscalar(1)
    for g in u:
        b = b * ctx2.bgen(g)
    form = d(theta(b))
    assert horizontal(form) == form
    assert horizontal(horizontal(form)) == horizontal(form)


@pytest.mark.parametrize("p", ["1-z", "z^2-1", "(z-1)^2", "z^3+2", "z^2-3*z+1", "5"])
@pytest.mark.parametrize("target", ["w-", "w0", "w+"])
def test_density_witnesses(p, target):
    ctx = AlgebraCtx(parse_poly(p))
    wit = density_witness(target, ctx)
    assert wit.evaluate() == w(ctx, SLOT[target])


def test_density_with_other_parameters(ctx_sq):
    params = DerivParams(alpha0=3, alpha_plus=Q, alpha_minus=Q + 1)
    for target in SLOT:
        assert density_witness(target, ctx_sq, params).evaluate(params) == w(ctx_sq, SLOT[target])


@pytest.mark.parametrize("p", ["1-z", "z^2-1", "(z-1)^2"])
@pytest.mark.parametrize("target", ["w-", "w0", "w+"])
def test_linear_solve_oracle_finds_witness(p, target):
    # an independent search over A-linear combinations of d(generators)
    ctx = AlgebraCtx(parse_poly(p))
    wit = None
    for length in range(1, 8):
        wit = solve_density(target, ctx, length)
        if wit is not None:
            break
    assert wit is not None
    assert wit.evaluate() == w(ctx, SLOT[target])


def test_non_separable_rejected():
    ctx = AlgebraCtx(parse_poly("z"))
    with pytest.raises(NotRegularError):
        density_witness("w0", ctx)
    with pytest.raises(NotRegularError):
        bar_omega_witness("z+^2*w-", ctx)


@pytest.mark.parametrize("p", ["1-z", "z^2-1", "(z-1)^2", "z^3+2"])
@pytest.mark.parametrize("target", BAR_TARGETS)
def test_bar_witnesses(p, target):
    ctx = AlgebraCtx(parse_poly(p))
    wit = bar_omega_witness(target, ctx)
    assert wit.evaluate() == bar_target_form(ctx, target)
    assert {g for _, g, _ in wit.terms} <= {"x", "y", "z"}


def test_bar_linear_example(ctx_lin):
    # alpha+ mu z-^2 w+ = q y d(z) - q^-1 z d(y) where mu = p(0) = 1
    y, z, one = ctx_lin.bgen("y"), ctx_lin.bgen("z"), ctx_lin.bscalar(1)
    lhs = BarWitness("z-^2*w+", [(y.scale(Q), "z", one), (z.scale(-Q.inverse()), "y", one)]).evaluate()
    assert lhs == bar_target_form(ctx_lin, "z-^2*w+")
