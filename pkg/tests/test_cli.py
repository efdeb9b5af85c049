import json
import subprocess
import sys

import pytest

from constacode import cli

GF2_12 = "1,1,0,1,0,1,1,1,0,0,0,0,1"


def _main(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_golden(capsys):
    code, out, _ = _main(["build", "--q", "4", "--n", "15", "--r", "3", "--field-poly", GF2_12], capsys)
    assert code == 0
    rep = json.loads(out)
    got = {k: (v["length"], v["dim"], v["d"]) for k, v in rep["codes"].items()}
    assert got == {"C": (15, 6, 4), "Cperp": (15, 9, 3), "Exp1": (15, 2, 12),
                   "Exp2": (5, 2, 4), "Exp3": (15, 2, 12)}
    assert rep["params"]["kappa"] == 3 and rep["params"]["ell"] == 2
    assert rep["codes"]["C"]["weight_distribution"] == [[0, "1"], [4, "45"], [8, "675"], [12, "3375"]]


def test_build_is_deterministic():
    argv = ["build", "--q", "3", "--n", "11", "--r", "2"]
    a, b = cli.run(argv), cli.run(argv)
    assert a == b and a[0] == 0


def test_zero_dual_reported_as_infinity(capsys):
    code, out, _ = _main(["build", "--q", "3", "--n", "1", "--r", "1"], capsys)
    assert code == 0
    assert json.loads(out)["codes"]["Cperp"]["d"] == "∞"


def test_build_csv(capsys):
    code, out, _ = _main(["build", "--q", "3", "--n", "11", "--r", "2", "--codes", "C,Exp1", "--csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "code,length,dim,d"
    assert lines[1:] == ["C,11,5,6", "Exp1,22,5,12"]


@pytest.mark.parametrize("theorem", ["thm4", "thm5", "thm6", "thm7"])
def test_verify_pass(theorem, capsys):
    code, out, _ = _main(["verify", theorem, "--q", "4", "--n", "15", "--r", "3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert all(a["pass"] is not False for a in rep["assertions"])


def test_verify_family_command(capsys):
    code, out, _ = _main(["verify", "thm9", "--q", "7", "--m", "3", "--e", "3", "--u", "2", "--r", "6"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["detail"]["case"] == "e3"


def test_verify_family_outside_hypotheses(capsys):
    argv = ["verify", "thm9", "--q", "11", "--m", "2", "--e", "4", "--u", "3", "--r", "10"]
    code, _, err = _main(argv, capsys)
    assert code == 2 and "u | q-1" in err
    code, out, _ = _main(argv + ["--allow-outside"], capsys)
    assert code == 0 and json.loads(out)["detail"]["violations"] == ["u | q-1"]


def test_verify_bridge_failure_has_counterexample(capsys):
    code, out, _ = _main(["verify", "bridge", "--q", "3", "--n", "5", "--r", "2"], capsys)
    assert code == 1
    rep = json.loads(out)
    names = {a["name"]: a["pass"] for a in rep["assertions"]}
    assert names == {"permutation_i_to_ir": False, "monomial_scaled": True, "equal_enumerators": True}
    assert rep["detail"]["counterexample"]["C_perp_generator"]


def test_verify_sqrt(capsys):
    code, out, _ = _main(["verify", "sqrt", "--q", "3", "--n", "11"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["detail"]["d"] == 6 and rep["detail"]["d_dual"] == 5


def test_table_and_scan(capsys):
    code, out, _ = _main(["table", "1", "--q", "3", "--max-n", "23"], capsys)
    assert code == 0
    assert out.strip().splitlines() == ["n,d,d_dual", "11,6,5", "23,9,8"]
    code, out, _ = _main(["scan", "qr", "--q", "7", "--max-n", "60"], capsys)
    assert code == 0 and json.loads(out) == [31, 47, 53, 59]
    code, out, _ = _main(["scan", "thm9", "--q", "3", "--max-n", "20"], capsys)
    assert code == 0 and all(row["n"] <= 20 for row in json.loads(out))


def test_table_bound_only_rows(capsys):
    code, out, _ = _main(["table", "1", "--q", "3", "--max-n", "37", "--budget", "1024", "--json"], capsys)
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[-1] == {"n": 37, "d": "≥8", "d_dual": "≥7"}


@pytest.mark.parametrize("argv", [
    ["build", "--q", "6", "--n", "5", "--r", "1"],
    ["build", "--q", "4", "--n", "15", "--r", "2"],
    ["build", "--q", "3", "--n", "6", "--r", "1"],
    ["build", "--q", "4", "--n", "15"],
    ["build", "--q", "4", "--n", "15", "--r", "3", "--codes", "C,Bogus"],
    ["scan", "qr", "--q", "3", "--max-n", "-1"],
    ["verify", "bridge", "--q", "4", "--n", "15", "--r", "3"],
    ["nonsense"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = _main(argv, capsys)
    assert code == 2 and out == "" and err


def test_budget_exit_3(capsys):
    code, _, err = _main(["build", "--q", "3", "--n", "11", "--r", "2", "--budget", "10"], capsys)
    assert code == 3 and "budget" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "constacode.cli", "scan", "qr", "--q", "3", "--max-n", "30"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == [11, 23]
