import csv
import io
import subprocess
import sys

import pytest
from mpmath import mp, mpf

from rrcf.cfengine import CFKind, evaluate
from rrcf.cli import fmt, run
from rrcf.config import EvalConfig
from rrcf.reciprocity import FAMILY_IDS, registry
from rrcf.values import known_value


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_verify_all():
    code, text = call("verify", "--family", "all", "--digits", "40")
    assert code == 0
    lines = text.strip().splitlines()
    assert len(lines) == len(FAMILY_IDS)
    assert all(line.startswith("PASS") for line in lines)


def test_verify_one():
    code, text = call("verify", "--family", "cubic+3")
    assert code == 0 and text.startswith("PASS cubic3")


def test_eval_decimal_alpha():
    code, text = call("eval", "--cf", "R", "--alpha", "3.14159265", "--digits", "30")
    assert code == 0
    with mp.workdps(40):
        got = mpf(text.strip())
        # the input is pi to 9 digits, so the value is R(e^-2pi) to about 1e-9
        assert abs(got - known_value("R_2pi", EvalConfig(30))) < mpf("1e-8")
        assert text.startswith("0.28407904")


def test_eval_exact_alpha_token():
    code, text = call("eval", "--cf", "R", "--alpha", "pi", "--digits", "30")
    assert code == 0
    with mp.workdps(40):
        assert abs(mpf(text.strip()) - known_value("R_2pi", EvalConfig(30))) < mpf("1e-30")


@pytest.mark.parametrize("alpha", ["pi/2", "pi/sqrt5", "pi/sqrt13", "sqrt2*pi", "2pi"])
def test_eval_tokens(alpha):
    code, text = call("eval", "--cf", "R", "--alpha", alpha, "--digits", "25")
    assert code == 0 and text.strip()


def test_eval_q_and_family():
    code, text = call("eval", "--cf", "G", "--alpha", "sqrt2*pi", "--family", "cubic-1", "--digits", "20")
    assert code == 0
    with mp.workdps(30):
        assert abs(mpf(text.strip()) - (mp.sqrt(mpf(3) / 2) - 1)) < mpf("1e-19")
    code, text = call("eval", "--cf", "selberg", "--q", "0.2")
    assert code == 0 and mpf(text.strip()) > 0


def test_digits_honored():
    digits = 35
    code, text = call("eval", "--cf", "V", "--alpha", "0.7", "--digits", str(digits))
    assert code == 0
    cfg = EvalConfig(digits)
    with mp.workdps(cfg.working_digits):
        internal = evaluate(CFKind.V, mpf("0.7"), registry("k2"), cfg)
        printed = mpf(text.strip())
        ulp = mpf(10) ** (mp.floor(mp.log10(abs(internal))) - digits + 1)
        assert abs(printed - internal) <= ulp
        mantissa = text.strip().lstrip("0.").replace(".", "")
        assert len(mantissa) == digits


def test_fmt_round_half_even():
    assert fmt(mpf("0.125"), 2) == "0.12"
    assert fmt(mpf("0.375"), 2) == "0.38"
    assert fmt(mpf(-2.5), 1) == "-2"
    assert fmt(0, 5) == "0"


def test_figure_csv(tmp_path):
    path = tmp_path / "fig1.csv"
    code, _ = call("figure", "--id", "1", "--grid", "512", "--out", str(path))
    assert code == 0
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["alpha", "two_r"]
    assert len(rows) == 513
    raw = path.read_bytes()
    assert raw.endswith(b"\n") and b"\r" not in raw


@pytest.mark.parametrize(
    "fig,header",
    [
        (2, "alpha,R_alpha,R_beta"),
        (3, "alpha,R_alpha,exp_alpha,R_beta,exp_beta"),
        (4, "alpha,k"),
    ],
)
def test_figure_headers(fig, header):
    code, text = call("figure", "--id", str(fig), "--grid", "8")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == header and len(lines) == 9


def test_deterministic_output():
    a = call("figure", "--id", "2", "--grid", "16", "--digits", "25")
    b = call("figure", "--id", "2", "--grid", "16", "--digits", "25")
    assert a == b


def test_iterate(tmp_path):
    path = tmp_path / "chain.csv"
    code, text = call("iterate", "--start", "R_2pi", "--steps", "2", "--out", str(path))
    assert code == 0
    assert "R5(e^-2/5*pi)" in text and "R(e^-10pi)" in text
    assert path.read_text().splitlines()[0] == "kind,nome_exponent,alpha,value"


def test_scan(tmp_path):
    path = tmp_path / "scan.csv"
    code, text = call("scan", "--grid", "128", "--alpha-max", "4pi", "--digits", "15", "--out", str(path))
    assert code == 0
    first = text.splitlines()[0]
    assert first.startswith("max_err = ") and mpf(first.split("=")[1]) < mpf("0.000531")
    assert len(path.read_text().splitlines()) == 129


def test_invert_selberg():
    code, text = call("invert-selberg", "--x", "0.03125", "--digits", "25")
    assert code == 0
    with mp.workdps(30):
        assert abs(mpf(text.strip()) - mp.pi) < mpf("1e-24")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["eval", "--cf", "R"],
        ["eval", "--cf", "R", "--q", "0.1", "--alpha", "1"],
        ["figure", "--id", "7"],
        ["verify", "--digits", "x"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--cf", "X", "--q", "0.1"],
        ["eval", "--cf", "R", "--q", "0.999"],
        ["eval", "--cf", "R", "--alpha", "-1"],
        ["eval", "--cf", "R", "--alpha", "1", "--family", "k2"],
        ["eval", "--cf", "R", "--alpha", "1", "--family", "k7"],
        ["verify", "--digits", "5"],
        ["invert-selberg", "--x", "0.07"],
        ["iterate", "--start", "nope"],
        ["scan", "--grid", "10"],
    ],
)
def test_domain_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_precision_exhaustion_exit_3():
    assert call("iterate", "--start", "R_2pi", "--steps", "12")[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rrcf", "eval", "--cf", "R", "--alpha", "pi", "--digits", "12"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.284079043840"
