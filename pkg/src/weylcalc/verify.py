"""Registry of identity checks and the verify-all driver."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

from .algebra import (
    AlgElem,
    AlgebraCtx,
    BElem,
    BMonomial,
    a_basis,
    b_basis,
    normalize,
    star,
    theta,
)
from .calculus import (
    BAR_TARGETS,
    OmegaElem,
    SLOTS,
    bar_omega_witness,
    d,
    density_witness,
    horizontal,
    right_act,
    star_omega,
)
from .derivations import DEFAULT_PARAMS, DerivParams, delta, derivations, sigma
from .integral import (
    CoVector,
    beta_table,
    check_lambda_functional,
    divergence,
    integral,
    integral_by_recurrence,
    quotient_dimension,
)
from .rewrite import rewrite_word
from .scalars import ONE, Q, Scalar, ZPoly, q_integer
from .spin import (
    DEFAULT_SPIN,
    SpinParams,
    Spinor,
    commutator_d_u,
    dirac,
    dirac_via_connection,
    grading,
    identity2,
    idempotents,
    matadd2,
    matmul2,
    spinor_basis,
    strong_connection,
    verify_ko_dimension,
)

SEED = 20160321


@dataclass
class CheckResult:
    name: str
    ref: str
    status: str  # pass | fail | skipped
    counterexample: Optional[str] = None
    millis: float = 0.0
    checked: int = 0
    reason: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ref": self.ref,
            "status": self.status,
            "counterexample": self.counterexample,
            "millis": round(self.millis, 3),
            "reason": self.reason,
        }


@dataclass
class VerificationReport:
    p: str
    bound: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "bound": self.bound,
            "ok": self.ok,
            "checks": [r.to_json() for r in self.results],
        }


@dataclass
class Settings:
    ctx: AlgebraCtx
    bound: int
    params: DerivParams
    spin: SpinParams
    rng: random.Random


@dataclass
class Check:
    name: str
    ref: str
    fn: Callable[[Settings], Iterable[Optional[str]]]
    needs_regular: bool = False
    needs_nonconstant: bool = False
    needs_star: bool = False


REGISTRY: Dict[str, Check] = {}


def check(name: str, ref: str, **flags):
    def deco(fn):
        REGISTRY[name] = Check(name, ref, fn, **flags)
        return fn
    return deco


# ---------------------------------------------------------------------------
# helpers


def _mono(ctx, m) -> AlgElem:
    return ctx.monomial(*m)


def _bmono(ctx, m: BMonomial) -> BElem:
    return BElem({m: ONE}, ctx)


_COEFFS = (1, -1, 2, Q, -Q, Scalar.qpow(-1), Q * Q + 1)


def random_element(ctx: AlgebraCtx, rng: random.Random, max_length: int, terms: int = 3,
                   degree: Optional[int] = None) -> AlgElem:
    basis = a_basis(max_length, degree)
    out = ctx.zero
    for m in rng.sample(basis, min(terms, len(basis))):
        out = out + ctx.monomial(*m, rng.choice(_COEFFS))
    return out


def random_word(rng: random.Random, max_length: int):
    return tuple(rng.choice(("x+", "x-", "z+", "z-")) for _ in range(rng.randint(0, max_length)))


# ---------------------------------------------------------------------------
# algebra core


@check("core.confluence", "normal form independent of rewrite order")
def _confluence(s: Settings):
    for _ in range(60):
        w = random_word(s.rng, 2 * s.bound + 2)
        a = normalize(w, s.ctx)
        for strat in ("leftmost", "rightmost"):
            b = rewrite_word(w, s.ctx, strategy=strat)
            yield None if a == b else f"word {'*'.join(w) or '1'}: closed form {a}, {strat} {b}"


@check("core.associativity", "associativity of the normal-form product")
def _assoc(s: Settings):
    for _ in range(40):
        a, b, c = (random_element(s.ctx, s.rng, s.bound) for _ in range(3))
        yield None if (a * b) * c == a * (b * c) else f"a = {a}, b = {b}, c = {c}"


@check("core.theta_homomorphism", "Theta is an algebra map onto the degree-zero part")
def _theta_hom(s: Settings):
    ctx = s.ctx
    basis = b_basis(s.bound)
    for m1 in basis:
        for m2 in basis:
            u, v = _bmono(ctx, m1), _bmono(ctx, m2)
            yield None if theta(u * v) == theta(u) * theta(v) else f"u = {u}, v = {v}"


@check("core.star_involution", "star is an antimultiplicative involution")
def _star(s: Settings):
    for _ in range(40):
        a, b = random_element(s.ctx, s.rng, s.bound), random_element(s.ctx, s.rng, s.bound)
        if star(star(a)) != a:
            yield f"a = {a}: star(star(a)) != a"
        else:
            yield None if star(a * b) == star(b) * star(a) else f"a = {a}, b = {b}"


# ---------------------------------------------------------------------------
# derivations


@check("derivations.skew_leibniz", "twisted Leibniz rule d(ab) = d(a) sigma(b) + a d(b)")
def _skew_leibniz(s: Settings):
    ds = derivations(s.ctx, s.params)
    basis = [_mono(s.ctx, m) for m in a_basis(s.bound)]
    for dd in (ds.d0, ds.dplus, ds.dminus):
        for a in basis:
            da = dd(a)
            for b in basis:
                ok = dd(a * b) == da * dd.sigma(b) + a * dd(b)
                yield None if ok else f"{dd.tag}: a = {a}, b = {b}"


@check("derivations.q_skew", "sigma^-1 d sigma = q^(+-2) d for d+-, identity for d0")
def _q_skew(s: Settings):
    ds = derivations(s.ctx, s.params)
    for m in a_basis(s.bound):
        a = _mono(s.ctx, m)
        for dd, tw, f in ((ds.d0, "zero", 0), (ds.dplus, "plus", 2), (ds.dminus, "minus", -2)):
            lhs = sigma(tw, dd(sigma(tw, a)), inverse=True)
            yield None if lhs == dd(a).scale(Scalar.qpow(f)) else f"{dd.tag}: a = {a}"


@check("derivations.degree_shift", "|d0 a| = |a| and |d+- a| = |a| -+ 2")
def _degree_shift(s: Settings):
    ds = derivations(s.ctx, s.params)
    for m in a_basis(s.bound):
        a = _mono(s.ctx, m)
        k = m.degree
        for dd, shift in ((ds.d0, 0), (ds.dplus, -2), (ds.dminus, 2)):
            yield None if dd(a).is_homogeneous(k + shift) else f"{dd.tag}: a = {a}"


@check("derivations.d0_closed_form", "d0 on x+^n z+^m and x-^n z-^m is a q-integer multiple")
def _d0_closed(s: Settings):
    ds = derivations(s.ctx, s.params)
    a0 = s.params.alpha0
    top = max(8, s.bound)
    for n in range(top + 1):
        for m in range(top + 1 - n):
            if n + m == 0:
                continue
            a = s.ctx.monomial(n, m, 0)
            exp = a.scale(a0 * q_integer(m + n))
            yield None if ds.d0(a) == exp else f"d0({a}) = {ds.d0(a)}"
            b = s.ctx.monomial(-n, 0, m)
            exp = b.scale(-a0 * Scalar.qpow(-2 * (m + n)) * q_integer(m + n))
            yield None if ds.d0(b) == exp else f"d0({b}) = {ds.d0(b)}"


@check("derivations.d0_kills_theta", "d0 vanishes on the image of Theta")
def _d0_theta(s: Settings):
    ds = derivations(s.ctx, s.params)
    for m in b_basis(s.bound + 1):
        b = _bmono(s.ctx, m)
        yield None if not ds.d0(theta(b)) else f"b = {b}: d0(Theta(b)) = {ds.d0(theta(b))}"


@check("derivations.delta_leibniz", "delta+- = d+- Theta are ordinary derivations on B")
def _delta_leibniz(s: Settings):
    ctx = s.ctx
    basis = [_bmono(ctx, m) for m in b_basis(s.bound)]
    for sign in ("plus", "minus"):
        shift = -2 if sign == "plus" else 2
        for u in basis:
            du = delta(sign, u, s.params)
            if not du.is_homogeneous(shift):
                yield f"delta_{sign}({u}) not of degree {shift}"
                continue
            for v in basis:
                ok = delta(sign, u * v, s.params) == du * theta(v) + theta(u) * delta(sign, v, s.params)
                yield None if ok else f"delta_{sign}: u = {u}, v = {v}"


@check("derivations.sigma_automorphism", "sigma+-, sigma0 are algebra automorphisms")
def _sigma_auto(s: Settings):
    for _ in range(30):
        a, b = random_element(s.ctx, s.rng, s.bound), random_element(s.ctx, s.rng, s.bound)
        for tw in ("plus", "zero"):
            ok = sigma(tw, a * b) == sigma(tw, a) * sigma(tw, b)
            yield None if ok else f"sigma_{tw}: a = {a}, b = {b}"


# ---------------------------------------------------------------------------
# calculus


@check("calculus.d_leibniz", "d(ab) = d(a) b + a d(b) in the twisted bimodule")
def _d_leibniz(s: Settings):
    basis = [_mono(s.ctx, m) for m in a_basis(s.bound)]
    dcache = {a: d(a, s.params) for a in basis}
    for a in basis:
        for b in basis:
            ok = d(a * b, s.params) == right_act(dcache[a], b) + dcache[b].left(a)
            yield None if ok else f"a = {a}, b = {b}"


@check("calculus.omega_relations", "w_i x = sigma_i(x) w_i on generators")
def _omega_rel(s: Settings):
    ctx = s.ctx
    exps = {"minus": 1, "zero": 2, "plus": 1}
    for slot in SLOTS:
        w = OmegaElem.basis(ctx, slot)
        for g, deg in (("z+", 1), ("z-", -1), ("x+", 1), ("x-", -1)):
            a = ctx.gen(g)
            exp = OmegaElem.basis(ctx, slot).left(a.scale(Scalar.qpow(exps[slot] * deg)))
            yield None if right_act(w, a) == exp else f"w_{slot} * {g}"


@check("calculus.bimodule", "(a w) b = a (w b)")
def _bimodule(s: Settings):
    for _ in range(30):
        a, b = random_element(s.ctx, s.rng, s.bound), random_element(s.ctx, s.rng, s.bound)
        w = OmegaElem(*(random_element(s.ctx, s.rng, s.bound, 2) for _ in SLOTS))
        yield None if right_act(w.left(a), b) == right_act(w, b).left(a) else f"a = {a}, w = {w}, b = {b}"


@check("calculus.degree_bookkeeping", "d maps A_k into A_(k+2) w- + A_k w0 + A_(k-2) w+")
def _deg_book(s: Settings):
    for m in a_basis(s.bound):
        w = d(_mono(s.ctx, m), s.params)
        k = m.degree
        ok = w.minus.is_homogeneous(k + 2) and w.zero.is_homogeneous(k) and w.plus.is_homogeneous(k - 2)
        yield None if ok else f"a = {_mono(s.ctx, m)}: d(a) = {w}"


@check("calculus.star_compatibility", "d(a*) = d(a)* and star on one-forms is involutive",
       needs_star=True)
def _star_calc(s: Settings):
    for m in a_basis(s.bound):
        a = _mono(s.ctx, m)
        da = d(a, s.params)
        if star_omega(star_omega(da, s.params), s.params) != da:
            yield f"a = {a}: star twice on d(a)"
        else:
            yield None if d(star(a), s.params) == star_omega(da, s.params) else f"a = {a}"


@check("calculus.horizontal_on_B", "d of degree-zero elements is horizontal")
def _horizontal(s: Settings):
    for m in b_basis(s.bound):
        w = d(theta(_bmono(s.ctx, m)), s.params)
        yield None if horizontal(w) == w else f"b = {_bmono(s.ctx, m)}"


@check("calculus.density_witnesses", "w-, w0, w+ lie in A d(A)", needs_regular=True)
def _density(s: Settings):
    for target in ("w-", "w0", "w+"):
        wit = density_witness(target, s.ctx, s.params)
        yield None if wit.evaluate(s.params) == OmegaElem.basis(s.ctx, {"w-": "minus", "w0": "zero", "w+": "plus"}[target]) else f"target {target}"


@check("calculus.bar_witnesses", "restricted calculus on B is generated by d(x), d(y), d(z)",
       needs_regular=True)
def _bar(s: Settings):
    from .calculus import bar_target_form

    for target in BAR_TARGETS:
        wit = bar_omega_witness(target, s.ctx, s.params)
        yield None if wit.evaluate(s.params) == bar_target_form(s.ctx, target) else f"target {target}"


# ---------------------------------------------------------------------------
# integral


def _random_covector(s: Settings, length: int) -> CoVector:
    return CoVector(*(random_element(s.ctx, s.rng, length, 2) for _ in SLOTS))


@check("integral.divergence_contract", "div(xi a) = div(xi) a + xi(d a)")
def _div_contract(s: Settings):
    for _ in range(40):
        xi = _random_covector(s, s.bound)
        a = random_element(s.ctx, s.rng, s.bound)
        lhs = divergence(xi.act(a), s.params)
        rhs = divergence(xi, s.params) * a + xi(d(a, s.params))
        yield None if lhs == rhs else f"xi = [{xi}], a = {a}"


@check("integral.dual_basis_divergence", "div vanishes on the dual basis")
def _div_dual(s: Settings):
    for slot in SLOTS:
        v = divergence(CoVector.dual(s.ctx, slot), s.params)
        yield None if not v else f"div(xi_{slot}) = {v}"


@check("integral.kills_divergence", "Lambda vanishes on the image of div",
       needs_regular=True, needs_nonconstant=True)
def _lambda_div(s: Settings):
    for _ in range(40):
        xi = _random_covector(s, s.bound + 1)
        v = integral(divergence(xi, s.params))
        yield None if v.is_zero() else f"xi = [{xi}]: Lambda(div xi) = {v}"


@check("integral.recurrence_oracle", "closed beta formula agrees with the order-n recurrence",
       needs_regular=True, needs_nonconstant=True)
def _oracle(s: Settings):
    for k in range(31):
        a = s.ctx.monomial(0, k, k)
        yield None if integral(a) == integral_by_recurrence(a) else f"k = {k}"


@check("integral.functional_equation", "Lambda(q^2 p(q^2 z) f(q^2 z)) = Lambda(p(z) f(z))",
       needs_regular=True, needs_nonconstant=True)
def _functional(s: Settings):
    for j in range(8):
        f = ZPoly.monomial(j)
        yield None if check_lambda_functional(f, s.ctx) else f"f = z^{j}"


@check("integral.vanishing_families", "Lambda vanishes off K[z], e.g. on Theta(x^(k+1) z^l), Theta(y^(k+1) z^l)",
       needs_regular=True, needs_nonconstant=True)
def _vanish(s: Settings):
    for m in a_basis(s.bound + 1):
        if m.k == 0 and m.zp == m.zm:
            continue
        a = _mono(s.ctx, m)
        yield None if integral(a).is_zero() else f"a = {a}"
    for k in range(3):
        for l in range(3):
            for t in (k + 1, -(k + 1)):
                b = _bmono(s.ctx, BMonomial(t, l))
                yield None if integral(theta(b)).is_zero() else f"b = {b}"


@check("integral.beta_rational", "beta coefficients are q-independent for rational p",
       needs_nonconstant=True)
def _beta_q(s: Settings):
    rational = all(c.is_constant() for c in s.ctx.p.monic().coeffs)
    tbl = beta_table(s.ctx.p, 20)
    for key, v in sorted(tbl.beta.items()):
        yield None if (not rational or v.is_constant()) else f"beta{key} = {v}"


@check("integral.space_dimension", "the integral space has dimension deg p",
       needs_regular=True, needs_nonconstant=True)
def _dim(s: Settings):
    n = s.ctx.p.degree
    got = quotient_dimension(s.ctx, n + 6, s.params)
    yield None if got == n else f"quotient dimension {got}, expected {n}"


# ---------------------------------------------------------------------------
# spin geometry


@check("spin.strong_connection", "l(+-1) legs multiply to 1 with degrees (-n, n)", needs_regular=True)
def _strong(s: Settings):
    for n in (1, -1):
        tot = s.ctx.zero
        for a, b in strong_connection(n, s.ctx):
            if not (a.is_homogeneous(-n) and b.is_homogeneous(n)):
                yield f"l({n}) leg degrees"
            tot = tot + a * b
        yield None if tot == s.ctx.one else f"l({n}) multiplies to {tot}"


@check("spin.idempotents", "e(1), e(-1) idempotent with e(1) + e(-1) = 1", needs_regular=True)
def _idem(s: Settings):
    e1, em1 = idempotents(s.ctx)
    yield None if matmul2(e1, e1) == e1 else "e(1)^2 != e(1)"
    yield None if matmul2(em1, em1) == em1 else "e(-1)^2 != e(-1)"
    yield None if matadd2(e1, em1) == identity2(s.ctx) else "e(1) + e(-1) != 1"


@check("spin.dirac_factorization", "D = Clifford action after the spinor connection",
       needs_regular=True)
def _dirac_fact(s: Settings):
    for sp in spinor_basis(s.ctx, s.bound + 1):
        yield None if dirac(sp, s.spin, s.params) == dirac_via_connection(sp, s.spin, s.params) else f"s = {sp}"


@check("spin.grading", "gamma is an involution anticommuting with D", needs_regular=True)
def _grading(s: Settings):
    for sp in spinor_basis(s.ctx, s.bound):
        if grading(grading(sp)) != sp:
            yield f"s = {sp}: gamma^2"
        else:
            ok = dirac(grading(sp), s.spin, s.params) == -grading(dirac(sp, s.spin, s.params))
            yield None if ok else f"s = {sp}"


@check("spin.commutator_formula", "[D,u](a s+ + b s-) = beta+ d+(u) b s+ + beta- d-(u) a s-",
       needs_regular=True)
def _comm(s: Settings):
    ds = derivations(s.ctx, s.params)
    for m in b_basis(s.bound):
        u = theta(_bmono(s.ctx, m))
        for sp in spinor_basis(s.ctx, s.bound):
            exp = Spinor((ds.dplus(u) * sp.minus).scale(s.spin.beta_plus),
                         (ds.dminus(u) * sp.plus).scale(s.spin.beta_minus))
            yield None if commutator_d_u(u, sp, s.spin, s.params) == exp else f"u = {u}, s = {sp}"


_KO_NAMES = {
    "J^2 = -id": "spin.real.j_squared",
    "J^2 = +id": "spin.real.j_squared",
    "J gamma = -gamma J": "spin.real.j_gamma",
    "J D = D J": "spin.real.j_dirac",
    "[u, J v J] = 0": "spin.real.order_zero",
    "[[D, u], J v J] = 0": "spin.real.order_one",
    "derivation/star exchange": "spin.real.star_exchange",
}


def _ko_results(s: Settings) -> List[CheckResult]:
    rep = verify_ko_dimension(s.ctx, s.spin, s.bound, s.params)
    out = []
    for r in rep.results:
        out.append(CheckResult(_KO_NAMES[r.name], f"real structure: {r.name} (KO-dimension {rep.ko})",
                               "pass" if r.passed else "fail", r.counterexample, r.millis, r.checked))
    return out


KO_CHECK_NAMES = sorted(set(_KO_NAMES.values()))


# ---------------------------------------------------------------------------
# driver


def _skip_reason(c: Check, s: Settings) -> Optional[str]:
    if c.needs_nonconstant and s.ctx.p.degree < 1:
        return "constant p has trivial integral space"
    if c.needs_regular and not s.ctx.regular:
        return "p not q²-separable"
    if c.needs_star and not s.params.star_compatible:
        return "derivation parameters are not star-compatible"
    return None


def run_check(c: Check, s: Settings) -> CheckResult:
    reason = _skip_reason(c, s)
    if reason:
        return CheckResult(c.name, c.ref, "skipped", None, 0.0, 0, reason)
    t0 = time.perf_counter()
    n = 0
    bad = None
    try:
        for outcome in c.fn(s):
            n += 1
            if outcome is not None:
                bad = outcome
                break
    except Exception as e:  # a crash is a failure with the error as evidence
        bad = f"{type(e).__name__}: {e}"
    ms = (time.perf_counter() - t0) * 1e3
    return CheckResult(c.name, c.ref, "fail" if bad else "pass", bad, ms, n)


def run_verify_all(p: ZPoly, bound: int = 3, params: DerivParams = DEFAULT_PARAMS,
                   spin: SpinParams = DEFAULT_SPIN, only: Optional[Iterable[str]] = None,
                   seed: int = SEED) -> VerificationReport:
    """Run every registered check; results are sorted by name."""
    ctx = AlgebraCtx(p)
    wanted = None if only is None else set(only)
    report = VerificationReport(str(p), bound)
    for name in sorted(REGISTRY):
        if wanted is not None and name not in wanted:
            continue
        # each check gets its own seeded stream, so results do not depend on
        # which other checks ran
        s = Settings(ctx, bound, params, spin, random.Random(f"{seed}:{name}"))
        report.results.append(run_check(REGISTRY[name], s))
    if wanted is None or wanted & set(KO_CHECK_NAMES):
        s = Settings(ctx, bound, params, spin, random.Random(seed))
        if not ctx.regular:
            report.results.extend(CheckResult(n, "real structure", "skipped", reason="p not q²-separable")
                                  for n in KO_CHECK_NAMES)
        elif not params.star_compatible:
            report.results.extend(CheckResult(n, "real structure", "skipped",
                                              reason="derivation parameters are not star-compatible")
                                  for n in KO_CHECK_NAMES)
        else:
            report.results.extend(r for r in _ko_results(s) if wanted is None or r.name in wanted)
    report.results.sort(key=lambda r: r.name)
    return report


def format_report(report: VerificationReport) -> str:
    lines = [f"verify-all p = {report.p}, bound = {report.bound}"]
    for r in report.results:
        line = f"  [{r.status.upper():7}] {r.name:36} {r.millis:9.1f} ms  {r.ref}"
        if r.status == "skipped":
            line += f"  (skipped: {r.reason})"
        lines.append(line)
        if r.counterexample:
            lines.append(f"      counterexample: {r.counterexample}")
    n_fail = len(report.failures)
    lines.append(f"{len(report.results)} checks, {n_fail} failed")
    return "\n".join(lines)
