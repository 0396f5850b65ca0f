import json
import subprocess
import sys

import pytest

from mahlerq.cli import run
from mahlerq.field import ParityPolynomial, SqrtThreeNumber
from mahlerq.measure import MahlerExpression, measure_expression


def out(capsys, argv, code=0):
    assert run(argv) == code
    return capsys.readouterr().out


def test_poly_text(capsys):
    assert out(capsys, ["poly", "--family", "S", "--k", "1"]).strip() == "-x/2"


def test_poly_json_round_trip(capsys):
    js = json.loads(out(capsys, ["--json", "poly", "--family", "R", "--k", "5"]))
    assert js["family"] == "R" and js["k"] == 5 and js["parity"] in ("even", "odd")
    from mahlerq.recpoly import get_poly

    assert ParityPolynomial.from_json(js) == get_poly("R", 5)


def test_json_flag_after_subcommand(capsys):
    js = json.loads(out(capsys, ["poly", "--family", "Q", "--k", "2", "--json"]))
    assert js["coeffs"][0] == {"rat": "10/3", "root": "0/1"}


def test_altpoly(capsys):
    js = json.loads(out(capsys, ["altpoly", "--family", "A", "--m", "4", "--json"]))
    assert js["method"] == "series"
    js2 = json.loads(out(capsys, ["altpoly", "--family", "A", "--m", "4", "--method", "convolution", "--json"]))
    assert js2["coeffs"] == js["coeffs"]
    assert run(["altpoly", "--family", "C", "--m", "2", "--method", "convolution"]) == 2


def test_measure(capsys):
    text = out(capsys, ["measure", "--n", "1", "--digits", "15"])
    assert "0.538443245365751" in text
    js = json.loads(out(capsys, ["measure", "--n", "4", "--basis", "derivative", "--json"]))
    assert js["n"] == 4 and js["basis"] == "derivative"
    assert js["numeric"].startswith("1.1519415586802")
    assert MahlerExpression.from_json(js) == measure_expression(4, "derivative")


def test_text_and_json_encode_same_values(capsys):
    text = out(capsys, ["measure", "--n", "2"])
    js = json.loads(out(capsys, ["measure", "--n", "2", "--json"]))
    for term in js["terms"]:
        assert str(SqrtThreeNumber.from_json(term["coeff"])) in text
    assert js["numeric"] in text


def test_table(capsys):
    text = out(capsys, ["table", "--max-n", "2"])
    assert "(91/18)*zeta(3)/pi^2" in text and "(5*sqrt(3)/12)*L(chi_-3,2)/pi^1" in text
    assert "(-182/9)*zeta'(-2)" in text


def test_coeffs(capsys):
    js = json.loads(out(capsys, ["coeffs", "--n", "3", "--json"]))
    assert js["a"]["3"][0] == {"rat": "552/5", "root": "0/1"}
    assert "d[3]" in out(capsys, ["coeffs", "--n", "3"])


def test_integral(capsys):
    text = out(capsys, ["integral", "--which", "g1", "--a", "1", "--b", "2", "--k", "0", "--digits", "20"])
    assert text.startswith("0.099021025794277901345")
    js = json.loads(out(capsys, ["integral", "--which", "fsum", "--a", "1", "--b", "-2", "--k", "0", "--json"]))
    assert js["b"] == "-2/1"


def test_special(capsys):
    assert out(capsys, ["special", "--zeta", "3", "--digits", "15"]).strip() == "1.20205690315959"
    assert out(capsys, ["special", "--lchi3", "2", "--digits", "15"]).strip() == "0.781302412896486"
    js = json.loads(out(capsys, ["special", "--identity", "Li(-w)+Li(-w2)", "--h", "1", "--json"]))
    assert js["coeff"] == {"rat": "2/3", "root": "0/1"}


def test_usage_errors(capsys):
    assert run(["measure", "--n", "1", "--digits", "5"]) == 2
    assert run(["poly", "--family", "X", "--k", "1"]) == 2
    assert run(["poly", "--family", "R", "--k", "1", "--bogus"]) == 2
    assert run([]) == 2


def test_computation_failure_exit_code(capsys):
    assert run(["integral", "--which", "f1", "--a", "1", "--b", "1", "--k", "0"]) == 1
    assert "error" in capsys.readouterr().err


def test_verify_json(capsys):
    js = json.loads(out(capsys, ["verify", "--suite", "measures", "--json"]))
    assert js["ok"] and all(c["passed"] for c in js["checks"])


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "mahlerq", "poly", "--family", "S", "--k", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "-x/2"


@pytest.mark.slow
def test_verify_all_exit_zero(capsys):
    assert run(["verify", "--suite", "all"]) == 0
