import pytest
from hypothesis import given, strategies as st

from weylcalc import AlgebraCtx, OmegaElem, Q, Scalar, SpinParams, Spinor, parse_expr, parse_poly
from weylcalc.algebra import a_basis
from weylcalc.spin import (
    DEFAULT_SPIN,
    KO6_SPIN,
    SpinError,
    clifford,
    connection,
    dirac,
    dirac_via_connection,
    grading,
    identity2,
    idempotents,
    matadd2,
    matmul2,
    real_structure,
    sign_on_unit_interval,
    strong_connection,
    verify_ko_dimension,
)

from conftest import A

CTX = AlgebraCtx(parse_poly("z^2-1"))


@st.composite
def spinors(draw, ctx=CTX, bound=3):
    plus = [m for m in a_basis(bound, degree=-1)]
    minus = [m for m in a_basis(bound, degree=1)]
    coeffs = st.sampled_from((0, 1, -1, Q, 2))
    a = ctx.zero
    for m in draw(st.lists(st.sampled_from(plus), max_size=2)):
        a = a + ctx.monomial(*m, draw(coeffs))
    b = ctx.zero
    for m in draw(st.lists(st.sampled_from(minus), max_size=2)):
        b = b + ctx.monomial(*m, draw(coeffs))
    return Spinor(a, b)


def S(text, ctx):
    return parse_expr(text, "spinor", ctx)


@pytest.mark.parametrize("n", [1, -1])
def test_strong_connection(regular_ctx, n):
    total = regular_ctx.zero
    for first, second in strong_connection(n, regular_ctx):
        assert first.is_homogeneous(-n) and second.is_homogeneous(n)
        total = total + first * second
    assert total == regular_ctx.one


def test_idempotents(regular_ctx):
    e1, em1 = idempotents(regular_ctx)
    assert matmul2(e1, e1) == e1
    assert matmul2(em1, em1) == em1
    assert matadd2(e1, em1) == identity2(regular_ctx)


def test_idempotent_example(ctx_lin):
    e1, _ = idempotents(ctx_lin)
    x, y, z = (ctx_lin.bgen(g) for g in "xyz")
    one = ctx_lin.bscalar(1)
    assert e1 == ((z.scale(Q * Q), -x), (-y, one - z))


def test_spinor_degree_checked(ctx2):
    with pytest.raises(SpinError):
        Spinor(ctx2.one, ctx2.zero)


def test_connection_empty_on_zero(ctx2):
    assert connection(Spinor.zero(ctx2)) == []


def test_clifford_examples(ctx2):
    w_plus = OmegaElem.basis(ctx2, "plus").left(A("x-^2", ctx2))
    assert clifford(w_plus, S("z+*s-", ctx2)) == S("x-^2*z+*s+", ctx2)
    w_minus = OmegaElem.basis(ctx2, "minus").left(A("z+^2", ctx2))
    expect = Spinor(ctx2.zero, A("z+^2*z-", ctx2).scale(DEFAULT_SPIN.beta_minus))
    assert clifford(w_minus, S("z-*s+", ctx2)) == expect
    assert clifford(OmegaElem.zero_form(ctx2), S("z-*s+", ctx2)).is_zero()


def test_dirac_examples(ctx2):
    bm, bp = DEFAULT_SPIN.beta_minus, DEFAULT_SPIN.beta_plus
    assert dirac(S("z-*s+", ctx2)) == Spinor(ctx2.zero, A("x+", ctx2).scale(bm * Q * Q))
    c = ctx2.zpoly(ctx2.c)
    assert dirac(S("x+*s-", ctx2)) == Spinor((c * A("z-", ctx2)).scale(bp / Q), ctx2.zero)
    assert dirac(Spinor.zero(ctx2)).is_zero()


@given(spinors())
def test_dirac_factorizes_through_connection(s):
    assert dirac(s) == dirac_via_connection(s)


@given(spinors())
def test_grading(s):
    assert grading(grading(s)) == s
    assert dirac(grading(s)) == -grading(dirac(s))


def test_grading_example(ctx2):
    assert grading(S("z-*s+ + z+*s-", ctx2)) == S("z-*s+ - z+*s-", ctx2)


def test_real_structure_example(ctx2):
    assert real_structure(S("z-*s+", ctx2)) == S("z+*s-", ctx2)


@given(spinors())
def test_real_structure_signs(s):
    assert real_structure(real_structure(s)) == -s
    assert real_structure(grading(s)) == -grading(real_structure(s))
    assert real_structure(dirac(s)) == dirac(real_structure(s))


def test_default_parameters():
    assert DEFAULT_SPIN.beta_minus == -Scalar.qpow(-3)
    assert DEFAULT_SPIN.constraint_holds() and DEFAULT_SPIN.orientation_holds()
    assert KO6_SPIN.constraint_holds() and KO6_SPIN.orientation_holds()
    DEFAULT_SPIN.validate()
    with pytest.raises(SpinError):
        SpinParams(nu=Q).validate()
    with pytest.raises(SpinError):
        SpinParams(beta_minus=Scalar.qpow(-3), ko=2).validate()


def test_sign_on_unit_interval():
    assert sign_on_unit_interval(-Scalar.qpow(-3)) == -1
    assert sign_on_unit_interval(Q * Q + 1) == 1
    assert sign_on_unit_interval(Q * 2 - 1) is None
    assert sign_on_unit_interval(1 / (Q - 1)) == -1


@pytest.mark.parametrize("p", ["1-z", "(z-1)^2"])
@pytest.mark.parametrize("spin", [DEFAULT_SPIN, KO6_SPIN], ids=["ko2", "ko6"])
def test_ko_conditions(p, spin):
    rep = verify_ko_dimension(AlgebraCtx(parse_poly(p)), spin, bound=2)
    assert rep.passed, [r for r in rep.results if not r.passed]


def test_ko6_sign_pattern(ctx2):
    s = S("z-*s+ + x+*s-", ctx2)
    J = lambda t: real_structure(t, KO6_SPIN)
    assert J(J(s)) == s
    assert J(dirac(s, KO6_SPIN)) == dirac(J(s), KO6_SPIN)


def test_negative_control_fails_jd(ctx2):
    rep = verify_ko_dimension(ctx2, SpinParams(nu=Q), bound=2)
    jd = rep["J D = D J"]
    assert not jd.passed
    assert "J(D(s))" in jd.counterexample and "D(J(s))" in jd.counterexample
