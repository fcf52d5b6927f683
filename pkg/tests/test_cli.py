import json

import pytest
from click.testing import CliRunner

from ncquad.cli import main
from ncquad.composite import rows_from_json, rows_to_json
from oracles import sig_match


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, list(args))

    return go


def field(output, name):
    for line in output.splitlines():
        if line.startswith(name):
            return line.split("=", 1)[1].strip()
    raise KeyError(name)


def test_integrate_sqrt(run):
    r = run("integrate", "-f", "sqrt(x)", "-a", "0", "-b", "0.1", "-n", "2", "--panels", "1")
    assert r.exit_code == 0, r.output
    assert sig_match(field(r.output, "S "), "0.0158114", 6)
    assert sig_match(field(r.output, "E_bar"), "0.00436619", 6)


def test_integrate_log_integral_with_reference(run):
    r = run(
        "integrate", "-f", "1/ln(x)", "-a", "100000", "-b", "200000", "-n", "3", "--step", "5",
        "-p", "32", "--reference", "8406.2431208462027086216460436947",
    )
    assert r.exit_code == 0, r.output
    assert field(r.output, "S ").startswith("8406.24312084620270")
    assert sig_match(field(r.output, "E_bar"), "-5.9854000e-17", 5)
    assert field(r.output, "verdict") == "realistic"


def test_integrate_quadratic_is_exact(run):
    r = run("integrate", "-f", "x^2", "-a", "0", "-b", "1", "-n", "3", "--panels", "1", "--format", "json")
    d = json.loads(r.output)
    assert sig_match(d["S"], "0.33333333333333333", 15)
    assert d["E_bar"] == "0"


def test_integrate_per_panel_json(run):
    r = run("integrate", "-f", "exp(x)", "-a", "0", "-b", "1", "-n", "5", "--panels", "3",
            "--format", "json", "--per-panel")
    d = json.loads(r.output)
    assert len(d["per_panel"]) == 3 and len(d["per_panel"][0]["correction_terms"]) == 4


def test_integrate_csv(run):
    r = run("integrate", "-f", "exp(x)", "-a", "0", "-b", "1", "-n", "3", "--panels", "2", "--format", "csv")
    assert r.output.splitlines()[0] == "h,n,Q,E_tilde,S,E_bar,E_true"


def test_constant_bounds(run):
    r = run("integrate", "-f", "sin(2*x)", "-a", "0", "-b", "pi/5", "-n", "5", "--panels", "2")
    assert r.exit_code == 0, r.output


@pytest.mark.parametrize(
    "args",
    [
        ("-f", "sqrt(x", "-a", "0", "-b", "1", "-n", "2", "--panels", "1"),
        ("-f", "tan(x)", "-a", "0", "-b", "1", "-n", "2", "--panels", "1"),
        ("-f", "ln(x)", "-a", "0", "-b", "1", "-n", "2", "--panels", "1"),
        ("-f", "x", "-a", "0", "-b", "1", "-n", "3", "--step", "0.3"),
        ("-f", "x", "-a", "0", "-b", "1", "-n", "3"),
        ("-f", "x", "-a", "0", "-b", "1", "-n", "3", "--panels", "1", "--step", "0.5"),
    ],
)
def test_input_errors_exit_2(run, args):
    r = run("integrate", *args)
    assert r.exit_code == 2


def test_syntax_error_shows_caret(run):
    r = run("integrate", "-f", "sqrt(x", "-a", "0", "-b", "1", "-n", "2", "--panels", "1")
    assert "offset 6" in r.output and "      ^" in r.output


def test_vanishing_proxy_exits_3_but_reports_S(run):
    r = run("integrate", "-f", "(x-0.5)^2", "-a", "0", "-b", "2", "-n", "3", "--panels", "1")
    assert r.exit_code == 3
    assert "unavailable" in r.output
    assert sig_match(field(r.output, "S "), "1.166666666666667", 15)  # 7/6


def test_sweep_empty(run):
    r = run("sweep", "-f", "x", "-a", "0", "-b", "1", "-n", "3", "--format", "csv")
    assert r.exit_code == 0 and r.output == "h,n,Q,E_tilde,S,E_bar,E_true\n"


def test_sweep_gaussian_table(run):
    steps = ["0.5", "0.25", "0.125", "0.0625"]
    args = ["sweep", "-f", "exp(-x^2)", "-a", "0", "-n", "3", "-p", "30",
            "--antiderivative", "sqrt(pi)/2*erf(x)"]
    for s in steps:
        args += ["--step", s]
    r = run(*args)
    assert r.exit_code == 0, r.output
    body = r.output.splitlines()[1:]
    assert len(body) == 4 and all(line.endswith(" realistic") for line in body)
    assert sig_match(body[0].split()[2], "-3.96282e-04", 6)


def test_sweep_paired_cases(run):
    r = run("sweep", "-f", "1/ln(x)", "-a", "100000", "-b", "200000", "-n", "3", "-n", "5",
            "--step", "5", "--step", "25", "-p", "40", "--format", "csv")
    lines = r.output.splitlines()
    assert r.exit_code == 0 and [l.split(",")[:2] for l in lines[1:]] == [["5", "3"], ["25", "5"]]


def test_sweep_json_round_trip(run, tmp_path):
    out = tmp_path / "rows.json"
    r = run("sweep", "-f", "sqrt(x)", "-a", "0", "-n", "2", "--step", "0.1", "--step", "0.05",
            "-p", "25", "--antiderivative", "2/3*x*sqrt(x)", "--format", "json", "-o", str(out))
    assert r.exit_code == 0
    text = out.read_text()
    rows = rows_from_json(text)
    assert len(rows) == 2 and sig_match(rows[0].E_true, "0.00527046", 6)
    assert json.loads(rows_to_json(rows, 25)) == json.loads(text)


def test_output_is_deterministic(run):
    args = ("sweep", "-f", "sin(2*x)", "-a", "0", "-b", "0.5", "-n", "5", "--step", "0.125",
            "--step", "0.0625", "-p", "30", "--format", "json")
    assert run(*args).output == run(*args).output


def test_weights_n9(run):
    r = run("weights", "9")
    assert "a_9 = 506368/45 h^9" in r.output
    assert "degree = 9" in r.output


def test_weights_n2_json(run):
    d = json.loads(run("weights", "2", "--format", "json").output)
    assert [(w["num"], w["den"], w["h_power"]) for w in d["weights"]] == [("1", "1", 1), ("1", "2", 2)]


def test_weights_n12(run):
    r = run("weights", "12", "--format", "csv")
    assert r.exit_code == 0 and len(r.output.splitlines()) == 13


def test_gcheck(run, tmp_path):
    out = tmp_path / "g.csv"
    r = run("gcheck", "-f", "exp(-x^2)", "-a", "0", "-b", "1", "-n", "3", "--step", "0.5",
            "--grid", "50", "-o", str(out))
    assert r.exit_code == 0
    assert "condition g >= h holds: yes" in r.output
    assert len(out.read_text().splitlines()) == 51


def test_gcheck_flags_sign_change(run):
    r = run("gcheck", "-f", "sin(x)", "-a", "0", "-b", "2*pi", "-n", "3", "--step", "0.1", "--grid", "64")
    assert "f' zero suspected: yes" in r.output


def test_low_precision_warning(run):
    res = CliRunner().invoke(main, ["integrate", "-f", "1/ln(x)", "-a", "100000", "-b", "100010",
                               "-n", "7", "--step", "5/3", "-p", "16"])
    assert "warning" in res.output
