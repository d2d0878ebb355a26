"""Command-line front end: ``weylcalc <verb> [args] [options]``."""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from typing import Dict, List, Optional

from . import __version__
from .algebra import AlgebraCtx, AlgebraError, grade_decompose, theta
from .calculus import BAR_TARGETS, CalculusError, bar_omega_witness, d, density_witness
from .derivations import DerivParams, DerivationError, derivations, sigma
from .integral import CoVector, IntegralError, beta_table, divergence, integral, integral_table
from .parser import ParseError, parse_expr, parse_poly, parse_scalar
from .scalars import DegenerateError
from .spin import SpinError, SpinParams, dirac, idempotents, verify_ko_dimension
from .verify import format_report, run_verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONFIG_KEYS = ("p", "alpha0", "alpha+", "alpha-", "beta+", "beta-", "nu", "ko", "bound", "kmax")


class UsageError(Exception):
    pass


def read_config(path: str) -> Dict[str, str]:
    """Flat ``key = value`` file; '#' starts a comment."""
    cp = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",),
                                   inline_comment_prefixes=("#",))
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[weylcalc]\n" + fh.read())
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror}") from None
    except configparser.Error as e:
        raise UsageError(f"bad config {path}: {e}") from None
    out = dict(cp["weylcalc"])
    unknown = sorted(set(out) - set(CONFIG_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    return out


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", dest="p", help="defining polynomial in z, e.g. 'z^2-1'")
    common.add_argument("--config", help="key = value file with default parameters")
    common.add_argument("--json", dest="json_out", metavar="FILE", help="also write a JSON report")
    common.add_argument("--alpha0", dest="alpha0")
    common.add_argument("--alpha+", dest="alpha_plus")
    common.add_argument("--alpha-", dest="alpha_minus")

    spin = argparse.ArgumentParser(add_help=False)
    spin.add_argument("--beta+", dest="beta_plus")
    spin.add_argument("--beta-", dest="beta_minus")
    spin.add_argument("--nu", dest="nu")
    spin.add_argument("--ko", dest="ko", choices=("2", "6"))

    top = argparse.ArgumentParser(prog="weylcalc", description="Exact computations in A(p;q) and B(p;q).")
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    def add(name, help_, parents=(common,)):
        return sub.add_parser(name, help=help_, parents=list(parents))

    p = add("nf", "normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--algebra", choices=("A", "B"), default="A")
    p = add("mul", "product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--algebra", choices=("A", "B"), default="A")
    p = add("grade", "homogeneous components of an A expression")
    p.add_argument("expr")
    p = add("apply", "apply a skew derivation or twisting automorphism")
    p.add_argument("op", choices=("d0", "d+", "d-", "sigma0", "sigma+", "sigma-"))
    p.add_argument("expr")
    p = add("d", "exterior derivative of an A expression")
    p.add_argument("expr")
    p.add_argument("--algebra", choices=("A", "B"), default="A")
    p = add("density-witness", "explicit sum a_i d(b_i) for a basis one-form")
    p.add_argument("target", choices=("w-", "w0", "w+"))
    p = add("bar-witness", "B-bimodule combination of d(x), d(y), d(z) for a generator")
    p.add_argument("target", choices=BAR_TARGETS)
    p = add("integral", "integral of an A expression over the basis v_i")
    p.add_argument("expr")
    p = add("integral-table", "Lambda(z^k) for k = 0..kmax")
    p.add_argument("--kmax", type=int)
    p = add("beta-table", "beta coefficients for k = 0..kmax")
    p.add_argument("--kmax", type=int)
    p = add("divergence", "divergence of the covector with the given values on w-, w0, w+")
    p.add_argument("minus")
    p.add_argument("zero")
    p.add_argument("plus")
    p = add("dirac", "Dirac operator on a spinor '<expr>*s+ + <expr>*s-'", (common, spin))
    p.add_argument("expr")
    add("idempotents", "the idempotents e(1) and e(-1)")
    p = add("verify-ko", "check the real-structure conditions", (common, spin))
    p.add_argument("--bound", type=int)
    p = add("verify-all", "run every registered identity check", (common, spin))
    p.add_argument("--bound", type=int)
    return top


class _Env:
    """Resolved options: command line beats config file beats defaults."""

    def __init__(self, ns):
        self.ns = ns
        self.cfg = read_config(ns.config) if getattr(ns, "config", None) else {}

    def get(self, attr: str, key: str, default=None):
        v = getattr(self.ns, attr, None)
        if v is None:
            v = self.cfg.get(key, default)
        return v

    def scalar(self, attr, key, default):
        text = self.get(attr, key)
        return default if text is None else parse_scalar(str(text))

    def integer(self, attr, key, default):
        v = self.get(attr, key, default)
        try:
            return int(v)
        except (TypeError, ValueError):
            raise UsageError(f"{key} must be an integer") from None

    def ctx(self) -> AlgebraCtx:
        text = self.get("p", "p")
        if text is None:
            raise UsageError("--p is required (or set p in the config file)")
        return AlgebraCtx(parse_poly(text))

    def deriv_params(self) -> DerivParams:
        dp = DerivParams()
        return DerivParams(self.scalar("alpha0", "alpha0", dp.alpha0),
                           self.scalar("alpha_plus", "alpha+", dp.alpha_plus),
                           self.scalar("alpha_minus", "alpha-", dp.alpha_minus))

    def spin_params(self) -> SpinParams:
        ko = self.integer("ko", "ko", 2)
        base = SpinParams() if ko == 2 else SpinParams(beta_minus=parse_scalar("1/q^3"), ko=6)
        return SpinParams(self.scalar("beta_plus", "beta+", base.beta_plus),
                          self.scalar("beta_minus", "beta-", base.beta_minus),
                          self.scalar("nu", "nu", base.nu), ko)


def _emit(env: _Env, payload: dict):
    path = env.ns.json_out
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False)
            fh.write("\n")


def _result_payload(verb: str, ctx: Optional[AlgebraCtx], result) -> dict:
    return {"verb": verb, "p": str(ctx.p) if ctx else None, "result": result}


def _run(ns, out) -> int:
    env = _Env(ns)
    verb = ns.verb
    params = env.deriv_params()

    if verb in ("integral-table", "beta-table"):
        p = env.ctx().p
        kmax = env.integer("kmax", "kmax", 20)
        if kmax < 0:
            raise UsageError("--kmax must be a natural number")
        if verb == "integral-table":
            rows = integral_table(p, kmax)
            for k, v in rows:
                print(f"{k}\t" + "\t".join(str(c) for c in v.coeffs), file=out)
            _emit(env, _result_payload(verb, AlgebraCtx(p),
                                       [{"k": k, "coeffs": [str(c) for c in v.coeffs]} for k, v in rows]))
        else:
            tbl = beta_table(p, kmax)
            print("mu\t" + "\t".join(str(m) for m in tbl.mu), file=out)
            for k in range(kmax + 1):
                print(f"{k}\t" + "\t".join(str(b) for b in tbl.row(k)), file=out)
            _emit(env, _result_payload(verb, AlgebraCtx(p), {
                "mu": [str(m) for m in tbl.mu],
                "beta": [{"k": k, "row": [str(b) for b in tbl.row(k)]} for k in range(kmax + 1)]}))
        return EXIT_OK

    ctx = env.ctx()

    if verb == "verify-all":
        bound = env.integer("bound", "bound", 3)
        report = run_verify_all(ctx.p, bound, params, env.spin_params())
        print(format_report(report), file=out)
        _emit(env, report.to_json())
        return EXIT_OK if report.ok else EXIT_FAIL

    if verb == "verify-ko":
        bound = env.integer("bound", "bound", 3)
        spin = env.spin_params()
        rep = verify_ko_dimension(ctx, spin, bound, params)
        checks = []
        print(f"KO-dimension {rep.ko} conditions, p = {ctx.p}, bound = {bound}", file=out)
        for r in rep.results:
            status = "pass" if r.passed else "fail"
            print(f"  [{status.upper():4}] {r.name} ({r.checked} cases, {r.millis:.1f} ms)", file=out)
            if r.counterexample:
                print(f"      counterexample: {r.counterexample}", file=out)
            checks.append({"name": r.name, "ref": f"real structure (KO-dimension {rep.ko})",
                           "status": status, "counterexample": r.counterexample,
                           "millis": round(r.millis, 3), "reason": None})
        _emit(env, {"p": str(ctx.p), "bound": bound, "ok": rep.passed, "checks": checks})
        return EXIT_OK if rep.passed else EXIT_FAIL

    result = _simple_verb(verb, ns, ctx, params, env, out)
    _emit(env, _result_payload(verb, ctx, result))
    return EXIT_OK


def _simple_verb(verb, ns, ctx, params, env, out):
    algebra = getattr(ns, "algebra", "A")
    if verb == "nf":
        r = parse_expr(ns.expr, algebra, ctx)
        print(r, file=out)
        return str(r)
    if verb == "mul":
        r = parse_expr(ns.left, algebra, ctx) * parse_expr(ns.right, algebra, ctx)
        print(r, file=out)
        return str(r)
    if verb == "grade":
        parts = grade_decompose(parse_expr(ns.expr, "A", ctx))
        for k in sorted(parts):
            print(f"{k}\t{parts[k]}", file=out)
        return {str(k): str(v) for k, v in sorted(parts.items())}
    if verb == "apply":
        a = parse_expr(ns.expr, "A", ctx)
        if ns.op.startswith("sigma"):
            r = sigma({"0": "zero", "+": "plus", "-": "minus"}[ns.op[-1]], a)
        else:
            r = derivations(ctx, params)[ns.op[1:]](a)
        print(r, file=out)
        return str(r)
    if verb == "d":
        a = parse_expr(ns.expr, algebra, ctx)
        if algebra == "B":
            a = theta(a)
        r = d(a, params)
        print(r, file=out)
        return {"w-": str(r.minus), "w0": str(r.zero), "w+": str(r.plus)}
    if verb == "density-witness":
        wit = density_witness(ns.target, ctx, params)
        print(f"{wit.target} =", file=out)
        for a, b in wit.pairs:
            print(f"  ({a}) d({b})", file=out)
        return {"target": wit.target, "pairs": [[str(a), str(b)] for a, b in wit.pairs]}
    if verb == "bar-witness":
        wit = bar_omega_witness(ns.target, ctx, params)
        print(f"{wit.target} =", file=out)
        for u, g, v in wit.terms:
            print(f"  ({u}) d({g}) ({v})", file=out)
        return {"target": wit.target, "terms": [[str(u), g, str(v)] for u, g, v in wit.terms]}
    if verb == "integral":
        r = integral(parse_expr(ns.expr, "A", ctx))
        print(r, file=out)
        return [str(c) for c in r.coeffs]
    if verb == "divergence":
        xi = CoVector(*(parse_expr(t, "A", ctx) for t in (ns.minus, ns.zero, ns.plus)))
        r = divergence(xi, params)
        print(r, file=out)
        return str(r)
    if verb == "dirac":
        s = parse_expr(ns.expr, "spinor", ctx)
        r = dirac(s, env.spin_params(), params)
        print(r, file=out)
        return {"s+": str(r.plus), "s-": str(r.minus)}
    if verb == "idempotents":
        e1, em1 = idempotents(ctx)
        res = {}
        for name, m in (("e(1)", e1), ("e(-1)", em1)):
            print(f"{name} =", file=out)
            for row in m:
                print("  [ " + " , ".join(str(x) for x in row) + " ]", file=out)
            res[name] = [[str(x) for x in row] for row in m]
        return res
    raise UsageError(f"unknown verb {verb}")


_DOMAIN_ERRORS = (ParseError, UsageError, AlgebraError, CalculusError, DerivationError,
                  IntegralError, SpinError, DegenerateError)


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        return _run(ns, out)
    except _DOMAIN_ERRORS as e:
        print(f"weylcalc: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
