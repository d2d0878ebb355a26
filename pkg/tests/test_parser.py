import pytest
from hypothesis import given, strategies as st

from weylcalc import AlgebraCtx, OmegaElem, Q, Spinor, ZPoly, normalize, parse_expr, parse_poly, parse_scalar
from weylcalc.parser import ParseError

CTX = AlgebraCtx(parse_poly("z^2-1"))
GENS = ("x+", "x-", "z+", "z-")
COEFFS = (1, -1, 3, Q, Q.inverse(), Q * Q - 1, (Q + 1) / (Q * Q + 2))


def test_spec_examples(ctx2):
    assert parse_expr("z+*x+", "A", ctx2) == ctx2.monomial(1, 1, 0, Q)
    assert parse_expr("1", "A", ctx2) == ctx2.one
    assert parse_expr("x+^2*(q^2-1)", "A", ctx2) == ctx2.monomial(2, 0, 0, Q * Q - 1)


def test_precedence(ctx2):
    assert parse_scalar("2+3*q^2") == 2 + 3 * Q * Q
    assert parse_scalar("-q^2") == -(Q * Q)
    assert parse_scalar("(1+q)^2/q") == (1 + Q) ** 2 / Q
    assert parse_poly("(z-1)^2") == ZPoly([1, -2, 1])
    assert parse_expr("x+ - z- * z+", "A", ctx2) == ctx2.gen("x+") - ctx2.monomial(0, 1, 1)


@st.composite
def a_elements(draw):
    out = CTX.zero
    for _ in range(draw(st.integers(0, 4))):
        w = draw(st.lists(st.sampled_from(GENS), max_size=4))
        out = out + normalize(w, CTX, draw(st.sampled_from(COEFFS)))
    return out


@given(a_elements())
def test_round_trip_A(a):
    assert parse_expr(str(a), "A", CTX) == a
    assert str(parse_expr(str(a), "A", CTX)) == str(a)


@given(st.lists(st.sampled_from("xyz"), max_size=5), st.sampled_from(COEFFS))
def test_round_trip_B(w, c):
    b = CTX.bscalar(c)
    for g in w:
        b = b * CTX.bgen(g)
    assert parse_expr(str(b), "B", CTX) == b


def test_spinor_and_omega_modes(ctx2):
    s = parse_expr("z-*s+ + q*x+*s-", "spinor", ctx2)
    assert s == Spinor(ctx2.gen("z-"), ctx2.gen("x+").scale(Q))
    assert parse_expr(str(s), "spinor", ctx2) == s
    w = parse_expr("x+*w0 + (q^2+1)*z-*w+", "omega", ctx2)
    assert w == OmegaElem(ctx2.zero, ctx2.gen("x+"), ctx2.gen("z-").scale(Q * Q + 1))
    assert parse_expr(str(w), "omega", ctx2) == w
    # right action of A on one-forms
    assert parse_expr("w- * z+", "omega", ctx2) == OmegaElem.basis(ctx2, "minus").left(ctx2.gen("z+").scale(Q))


@pytest.mark.parametrize("text, pos", [
    ("x+ +", 4),
    ("x+ * (z-", 8),
    ("x+ $ z-", 3),
    ("x+^z-", 3),
    ("", 0),
])
def test_syntax_errors_carry_position(ctx2, text, pos):
    with pytest.raises(ParseError) as err:
        parse_expr(text, "A", ctx2)
    assert err.value.pos == pos
    assert f"position {pos}" in str(err.value)


def test_unknown_generator(ctx2):
    with pytest.raises(ParseError, match="unknown generator"):
        parse_expr("x+*y", "A", ctx2)
    with pytest.raises(ParseError, match="unknown generator"):
        parse_expr("x*w", "B", ctx2)


def test_division_only_by_scalars(ctx2):
    assert parse_expr("x+/q", "A", ctx2) == ctx2.gen("x+").scale(Q.inverse())
    with pytest.raises(ParseError):
        parse_expr("x+/z-", "A", ctx2)
    with pytest.raises(ParseError):
        parse_expr("x+/(q-q)", "A", ctx2)
