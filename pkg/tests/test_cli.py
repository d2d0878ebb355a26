import io
import json

import pytest

from weylcalc.cli import main
from weylcalc.verify import REGISTRY, run_verify_all
from weylcalc import parse_poly


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


def test_nf_and_mul():
    assert run("nf", "z+*x+", "--p", "z^2-1") == (0, "q*x+*z+\n")
    assert run("mul", "x+", "x-", "--p", "z^2-1") == (0, "-1 + z+^2*z-^2\n")
    code, out = run("mul", "x", "y", "--p", "z^2-1", "--algebra", "B")
    assert code == 0 and out.strip() == "-q^2*z + q^6*z^3"


def test_grade_apply_d():
    assert run("grade", "x+ + z-", "--p", "z^2-1") == (0, "-1\tz-\n1\tx+\n")
    assert run("apply", "d-", "z-", "--p", "z^2-1") == (0, "q*x+\n")
    assert run("apply", "sigma0", "x+", "--p", "z^2-1") == (0, "q^2*x+\n")
    code, out = run("d", "z+", "--p", "z^2-1")
    assert code == 0 and out.strip() == "(z+)*w0 + (x-)*w+"


def test_integral_table_example():
    code, out = run("integral-table", "--kmax", "3", "--p", "z^2-1")
    assert code == 0
    assert out.splitlines() == ["0\t1\t0", "1\t0\t1", "2\t1/(q^4+q^2+1)\t0", "3\t0\t1/(q^4+1)"]


def test_beta_table_example():
    code, out = run("beta-table", "--kmax", "2", "--p", "(z-1)^2")
    assert code == 0
    assert out.splitlines() == ["mu\t-1\t2", "0\t-1\t2", "1\t-2\t3", "2\t-3\t4"]


def test_witnesses_and_spin_verbs():
    assert run("density-witness", "w0", "--p", "1-z")[0] == 0
    assert run("bar-witness", "z+^2*w-", "--p", "z^2-1")[0] == 0
    assert run("dirac", "z-*s+", "--p", "z^2-1") == (0, "(-(1/q)*x+)*s-\n")
    code, out = run("idempotents", "--p", "1-z")
    assert code == 0 and "[ q^2*z , -x ]" in out


def test_divergence_verb():
    code, out = run("divergence", "0", "1", "0", "--p", "z^2-1")
    assert (code, out) == (0, "0\n")


def test_usage_errors(capsys):
    assert run("nf", "x+ +", "--p", "z^2-1")[0] == 2
    assert "position 4" in capsys.readouterr().err
    assert run("nf", "x+")[0] == 2
    assert "--p is required" in capsys.readouterr().err
    assert run("integral", "z+", "--p", "5")[0] == 2
    assert run("density-witness", "w0", "--p", "z")[0] == 2
    assert "not q²-separable" in capsys.readouterr().err
    assert run("frobnicate")[0] == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "params.cfg"
    cfg.write_text("# defaults\np = z^2 - 1\nalpha- = 2*q\n")
    assert run("apply", "d-", "z-", "--config", str(cfg)) == (0, "2*q*x+\n")
    # command-line options override the file
    assert run("apply", "d-", "z-", "--config", str(cfg), "--alpha-", "3") == (0, "3*x+\n")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run("nf", "1", "--config", str(bad))[0] == 2


def test_json_simple(tmp_path):
    out = tmp_path / "r.json"
    assert run("nf", "z+*x+", "--p", "z^2-1", "--json", str(out))[0] == 0
    assert json.loads(out.read_text()) == {"verb": "nf", "p": "z^2 - 1", "result": "q*x+*z+"}


def test_verify_ko_negative_control(tmp_path):
    out = tmp_path / "ko.json"
    code, text = run("verify-ko", "--p", "z^2-1", "--bound", "2", "--nu", "q", "--json", str(out))
    assert code == 1
    assert "counterexample: s = " in text
    rep = json.loads(out.read_text())
    failed = [c for c in rep["checks"] if c["status"] == "fail"]
    # perturbing nu breaks only the commutation with D
    assert [c["name"] for c in failed] == ["J D = D J"]
    assert rep["ok"] is False


def test_verify_all_skips_for_non_separable(tmp_path):
    out = tmp_path / "z.json"
    code, text = run("verify-all", "--p", "z", "--bound", "2", "--json", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert set(rep) == {"p", "bound", "ok", "checks"}
    skipped = {c["name"]: c["reason"] for c in rep["checks"] if c["status"] == "skipped"}
    assert skipped["calculus.density_witnesses"] == "p not q²-separable"
    assert skipped["spin.real.j_dirac"] == "p not q²-separable"
    for c in rep["checks"]:
        assert set(c) == {"name", "ref", "status", "counterexample", "millis", "reason"}


def test_verify_all_constant_p():
    rep = run_verify_all(parse_poly("1"), bound=2)
    assert rep.ok
    skipped = {r.name: r.reason for r in rep.results if r.status == "skipped"}
    assert skipped["integral.recurrence_oracle"] == "constant p has trivial integral space"


def test_verify_all_is_deterministic():
    def strip(rep):
        return [(r.name, r.status, r.counterexample, r.checked) for r in rep.results]

    a = run_verify_all(parse_poly("1-z"), bound=2)
    b = run_verify_all(parse_poly("1-z"), bound=2)
    assert a.ok and strip(a) == strip(b)
    assert [r.name for r in a.results] == sorted(r.name for r in a.results)
    assert set(REGISTRY) <= {r.name for r in a.results}


@pytest.mark.parametrize("verb", ["--version", "--help"])
def test_info_flags(verb):
    assert run(verb)[0] == 0
