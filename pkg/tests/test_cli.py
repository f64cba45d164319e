import json
import subprocess
import sys

from lambdaroots.cli import main


def run_cli(*args, capsys=None):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_lambda_scalar(capsys):
    code, out, _ = run_cli("lambda", "1", capsys=capsys)
    assert code == 0 and out.strip() == "1"


def test_order(capsys):
    code, out, _ = run_cli("order", "2", "9", capsys=capsys)
    assert code == 0 and out.strip() == "6"


def test_rcount_json(capsys):
    code, out, _ = run_cli("rcount", "8", capsys=capsys)
    assert code == 0
    assert out.strip() == '{"n": 8, "r_closed": 3, "r_brute": 3}'


def test_rho1(capsys):
    code, out, _ = run_cli("rho1", "--tol", "1e-7", capsys=capsys)
    assert code == 0 and out.strip() == "3.4199057"


def test_delta(capsys):
    code, out, _ = run_cli("delta", "15", capsys=capsys)
    d = json.loads(out)
    assert d == {"n": 15, "cyclic_orders": [2, 4], "lambda": 4, "delta": {"2": 1}}


def test_na_pa(capsys):
    code, out, _ = run_cli("na", "2", "10", capsys=capsys)
    assert json.loads(out)["count"] == 4
    code, out, _ = run_cli("pa", "2", "20", capsys=capsys)
    assert json.loads(out)["count"] == 5


def test_mean_rational_fields(capsys):
    code, out, _ = run_cli("mean", "10", capsys=capsys)
    d = json.loads(out)
    assert (d["mean_num"], d["mean_den"]) == ("9407", "2520")


def test_sigma1_both_forms(capsys):
    code, out, _ = run_cli("sigma1", "30", capsys=capsys)
    d = json.loads(out)
    assert d["equal"] is True
    assert d["direct_num"] == d["gcd_num"]


def test_bsum(capsys):
    code, out, _ = run_cli("bsum", "10", "10", capsys=capsys)
    d = json.loads(out)
    assert (d["b_num"], d["b_den"]) == ("-31", "12")


def test_moment2_report(capsys):
    code, out, _ = run_cli("moment2", "10", "10", capsys=capsys)
    d = json.loads(out)
    assert (d["m2_num"], d["m2_den"]) == ("32414089", "6350400")
    assert d["diagnostics"] == {}  # x below the logloglog threshold


def test_characters_summary(capsys):
    code, out, _ = run_cli("characters", "8", capsys=capsys)
    d = json.loads(out)
    assert d["count"] == 4
    assert d["order_counts"] == {"1": 1, "2": 3}
    assert d["elementary_order_counts"] == {"1": 1, "2": 3}


def test_constants_listing(capsys):
    code, out, _ = run_cli("constants", "--digits", "6", capsys=capsys)
    entries = {e["name"]: e for e in json.loads(out)}
    assert abs(float(entries["artin"]["value"]) - 0.373956) < 1e-6
    assert abs(float(entries["theorem12"]["value"]) - 0.341326) < 5e-7
    assert all(e["error_bound"] < 1e-6 for e in entries.values())


def test_error_object_and_exit_code(capsys):
    code, out, err = run_cli("rcount", "0", capsys=capsys)
    assert code == 2
    assert json.loads(err)["error"]["type"] == "ValueError"


def test_budget_error(capsys):
    code, _, err = run_cli("moment2", "100000", "10000", capsys=capsys)
    assert code == 2
    assert "budget" in json.loads(err)["error"]["message"]


def test_sweep_sigma1_rows(capsys):
    code, out, _ = run_cli("sweep", "--metric", "sigma1", "--xs", "1,2", capsys=capsys)
    lines = out.strip().split("\n")
    assert lines[0].startswith("x,y,mean_num")
    assert lines[1].split(",")[:2] == ["1", "1"]
    assert lines[1].split(",")[6:8] == ["0", "1"]
    assert lines[2].split(",")[6:8] == ["1", "4"]


def test_sweep_lexicographic_order(capsys):
    code, out, _ = run_cli("sweep", "--metric", "mean", "--xs", "3,1,2", capsys=capsys)
    xs = [row.split(",")[0] for row in out.strip().split("\n")[1:]]
    assert xs == ["1", "2", "3"]


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(
        "verify", "--suites", "constants-regression", capsys=capsys
    )
    assert code == 0
    assert "constants-regression" in out and "PASS" in out
    assert out.strip().endswith("1/1 suites passed")


def test_verify_caps_must_not_exceed_documented_bounds(capsys):
    code, _, err = run_cli(
        "verify", "--suites", "rho-counts", "--cap", "rho-counts=4000", capsys=capsys
    )
    assert code == 2
    assert "exceeds" in json.loads(err)["error"]["message"]


def test_verify_worker_determinism(capsys):
    args = ["verify", "--suites", "sigma1-forms,lower-bound", "--cap", "sigma1-forms=60", "--cap", "lower-bound=400"]
    code1, out1, _ = run_cli(*args, "--workers", "1", capsys=capsys)
    code2, out2, _ = run_cli(*args, "--workers", "4", capsys=capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_module_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "lambdaroots", "lambda", "8"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2"
