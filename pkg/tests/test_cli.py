import csv
import io
import json

import pytest

from dunkl_bessel import deformed
from dunkl_bessel.classical import bessel_j
from dunkl_bessel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_trivial(capsys):
    code, out, _ = run(capsys, "--format", "jsonl", "eval", "--family", "jmu", "--n", "0", "--mu", "0", "--x", "0")
    assert code == 0
    rec = json.loads(out)
    assert rec["value"] == 1.0 and rec["terms"] >= 1 and rec["abs_err_est"] >= 0
    assert list(rec) == ["family", "n", "mu", "x", "value", "abs_err_est", "terms"]


def test_eval_caljmu_equals_jmu_at_zero_order(capsys):
    vals = []
    for fam in ("caljmu", "jmu"):
        code, out, _ = run(capsys, "eval", "--family", fam, "--n", "0", "--mu", "0.5", "--x", "1.2", "--format", "csv")
        assert code == 0
        vals.append(float(rows(out)[0]["value"]))
    assert vals[0] == pytest.approx(vals[1], rel=1e-14)


def test_eval_negative_mu_is_domain_error(capsys):
    code, _, err = run(capsys, "eval", "--family", "jmu", "--n", "2", "--mu", "-1", "--x", "1")
    assert code == 1 and "error" in err


def test_eval_rational_mu_rejected(capsys):
    code, _, err = run(capsys, "eval", "--family", "jmu", "--n", "2", "--mu", "1/2", "--x", "1")
    assert code == 1 and "decimal" in err


@pytest.mark.parametrize("argv", [
    ["eval", "--family", "nope", "--n", "0", "--x", "1"],
    ["eval", "--family", "jmu", "--x", "1"],
    ["frobnicate"],
    ["--format", "xml", "eval", "--family", "jmu", "--n", "0", "--x", "1"],
    ["--tol", "0", "eval", "--family", "jmu", "--n", "0", "--x", "1"],
    ["table", "--family", "jmu", "--n-range", "3:1", "--x-range", "0:1"],
    ["table", "--family", "jmu", "--n-range", "0", "--x-range", "0:1:-1"],
    ["verify"],
    ["verify", "--all", "eq.dun"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_table_single_point_matches_eval(capsys):
    _, e, _ = run(capsys, "--format", "csv", "eval", "--family", "d2", "--n", "1", "--mu", "0.5", "--x", "2.5")
    _, t, _ = run(capsys, "--format", "csv", "table", "--family", "d2", "--n-range", "1", "--mu-list", "0.5",
                  "--x-range", "2.5")
    assert rows(t)[0]["value"] == rows(e)[0]["value"]


def test_table_csv_layout_and_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--family", "d2", "--n-range", "0:3", "--mu-list", "0,0.5",
                       "--x-range", "0:10:0.5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "family,n,mu,x,value,abs_err_est"
    recs = rows(out)
    assert len(recs) == 4 * 2 * 21
    order = [(int(r["n"]), float(r["mu"]), float(r["x"])) for r in recs]
    assert order == sorted(order)
    for r in recs:
        # repr output round-trips bit-for-bit
        ref = deformed.eval("d2", int(r["n"]), float(r["mu"]), float(r["x"]), 1e-12).value
        assert float(r["value"]) == ref


def test_table_mu_zero_is_classical(capsys):
    _, out, _ = run(capsys, "--format", "csv", "--tol", "1e-15", "table", "--family", "d3", "--n-range", "0:4",
                    "--mu-list", "0", "--x-range", "0:10:1.25")
    for r in rows(out):
        assert abs(float(r["value"]) - bessel_j(int(r["n"]), float(r["x"])).value) <= 1e-13


def test_coeffs_examples(capsys):
    code, out, _ = run(capsys, "--format", "csv", "coeffs", "--family", "jmu", "--n", "1", "--mu", "1/2",
                       "--order", "5")
    assert code == 0
    coeffs = [r["coeff"] for r in rows(out)]
    # [1]_(1/2) = 2, [3]_(1/2)! = 16, [5]_(1/2)! = 384
    assert coeffs == ["0/1", "1/4", "0/1", "-3/128", "0/1", "5/6144"]
    code, out, _ = run(capsys, "--format", "jsonl", "coeffs", "--family", "caljmu", "--n", "0", "--mu", "1/4",
                       "--order", "2")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["coeff"] == "1/1" and recs[0]["mu"] == "1/4"


def test_coeffs_decimal_mu_rejected(capsys):
    code, _, err = run(capsys, "coeffs", "--family", "jmu", "--n", "1", "--mu", "0.5", "--order", "4")
    assert code == 1 and "p/q" in err


def test_verify_single_and_unknown(capsys):
    code, out, _ = run(capsys, "--format", "jsonl", "verify", "eq.dbessel1")
    assert code == 0
    assert json.loads(out)["status"] == "pass"
    code, _, err = run(capsys, "verify", "no.such.id")
    assert code == 2 and "eq.dbessel1" in err


def test_verify_pretty_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "eq.dun", "pfq.exp", "--parallel", "2")
    assert code == 0 and out.split()[:3] == ["id", "status", "mode"]
    code, out, _ = run(capsys, "verify", "eq.dun", "--format", "csv")
    assert rows(out)[0]["status"] == "pass"


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "t.csv"
    code, out, _ = run(capsys, "--out", str(dest), "--format", "csv", "table", "--family", "jmu",
                       "--n-range", "0:1", "--x-range", "0:1:0.5")
    assert code == 0 and out == ""
    assert len(rows(dest.read_text())) == 6


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "eval", "--family", "jmu", "--n", "0", "--x", "0", "--format", "jsonl", "--tol", "1e-6")
    assert code == 0 and json.loads(out)["value"] == 1.0
