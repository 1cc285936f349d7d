import csv
import io
import math

import pytest

from ripangle import cli
from ripangle.csvio import format_value, read_manifest, rows_to_csv
from ripangle.experiments import ExperimentReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bounds_orthogonal(capsys):
    code, out, err = run(capsys, "bounds", "--delta", "0.3", "--theta-deg", "90")
    assert code == 0
    (row,) = rows_of(out)
    assert float(row["alpha_min_deg"]) == pytest.approx(71.6702463, abs=1e-6)
    assert float(row["alpha_max_deg"]) == pytest.approx(108.329754, abs=1e-6)
    assert row["branch"] == "T4.4(2)(b)/T3.4(1)"
    assert "branch:" in err


def test_bounds_sixty(capsys):
    code, out, _ = run(capsys, "bounds", "--delta", "0.3", "--theta-rad", str(math.pi / 3))
    (row,) = rows_of(out)
    assert float(row["alpha_max_deg"]) == pytest.approx(76.3910394, abs=1e-6)
    assert row["branch_max"] == "T3.2"
    assert float(row["pol_bound"]) == 1.0


@pytest.mark.parametrize("value", ["1.2", "0", "-0.1", "abc"])
def test_bounds_bad_delta(capsys, value):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bounds", "--delta", value, "--theta-deg", "60"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "--delta" in err
    if value != "abc":
        assert "delta must be in (0,1)" in err


def test_bounds_bad_theta(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bounds", "--delta", "0.3", "--theta-deg", "180"])
    assert exc.value.code == 2


def test_single_point_sweep_matches_bounds(capsys):
    _, b, _ = run(capsys, "bounds", "--delta", "0.25", "--theta-deg", "40")
    _, s, _ = run(capsys, "sweep", "--deltas", "0.25", "--thetas-deg", "40")
    rb, rs = rows_of(b)[0], rows_of(s)[0]
    for k in ("alpha_min", "alpha_max", "pol_bound", "cos_lo", "cos_hi", "branch_min", "branch_max"):
        assert rb[k] == rs[k]


def test_sweep_with_oracle(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "sweep", "--deltas", "0.2,0.3", "--thetas-deg", "30:90:30",
                          "--oracle", "--grid-n", "32", "--out", str(out))
    assert code == 0 and "violations: 0" in stdout
    rows = rows_of(out.read_text())
    assert len(rows) == 6
    assert max(float(r["dev_max_deg"]) for r in rows) <= 0.01
    assert rows[0].keys() >= {"oracle_min", "oracle_max", "dev_min", "dev_max", "branch_min"}


def test_sweep_default_grid_size():
    ap = cli.build_parser()
    args = ap.parse_args(["sweep"])
    assert len(args.deltas) == 18 and len(args.thetas_deg) == 18
    assert args.deltas[-1] == 0.9 and args.thetas_deg[0] == 5.0


def test_parse_grid():
    assert cli.parse_grid("0.1:0.3:0.1") == [0.1, 0.2, 0.3]
    assert cli.parse_grid("1,2.5") == [1.0, 2.5]
    with pytest.raises(Exception):
        cli.parse_grid("1:0:1")


def test_ric_tau(capsys):
    code, out, err = run(capsys, "ric", "--tau", "0.4")
    (row,) = rows_of(out)
    assert float(row["delta_new"]) == pytest.approx(0.321699, abs=1e-6)
    assert float(row["delta_alg"]) == pytest.approx(0.285714, abs=1e-6)
    assert "21.1" in err


def test_ric_delta(capsys):
    _, out, _ = run(capsys, "ric", "--delta", "0.3")
    (row,) = rows_of(out)
    assert float(row["delta_bar"]) == pytest.approx(0.369231, abs=1e-6)
    assert float(row["delta_bar_a"]) == pytest.approx(0.428571, abs=1e-6)
    assert row["err_bound_alg"] == "nan"


def test_ric_omp_note(capsys):
    _, out, _ = run(capsys, "ric", "--omp-K", "10")
    (row,) = rows_of(out)
    assert float(row["delta_new"]) == pytest.approx(0.140748, abs=1e-6)
    assert float(row["delta_prior"]) == pytest.approx(0.182744, abs=1e-6)
    assert row["note"] == "new_below_prior"


@pytest.mark.parametrize("curve,n", [("ric", 99), ("tau", 99), ("omp", 100)])
def test_ric_curves(capsys, curve, n):
    _, out, _ = run(capsys, "ric", "--curve", curve)
    assert len(rows_of(out)) == n


def test_containment_outputs(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, stdout, _ = run(capsys, "containment", "--p", "64", "--m", "32", "--K", "4",
                          "--trials", "50", "--seed", "7", "--out", str(out))
    assert code == 0 and "violations: 0" in stdout and "seed: 7" in stdout
    man = read_manifest(str(out) + ".manifest")
    assert man["command"] == "containment" and man["param.seed"] == "7"
    assert "timestamp" in man
    body = out.read_bytes()
    assert body.endswith(b"\n") and b"\r" not in body


def test_experiment_exit_status_on_violation(capsys, monkeypatch):
    def fake(*a, **k):
        return ExperimentReport("containment", [{"trial": 0}], {
            "violations": 2, "excluded": 0, "delta_design": 0.3, "design_outside": 0})
    monkeypatch.setattr(cli, "containment_experiment", fake)
    code, _, err = run(capsys, "containment", "--p", "64", "--m", "32", "--K", "4")
    assert code == 1 and "violations: 2" in err


def test_projric_and_omp(capsys):
    code, _, err = run(capsys, "projric", "--p", "64", "--m", "48", "--K", "6", "--kI", "2",
                       "--trials", "30", "--seed", "1")
    assert code == 0 and "violations: 0" in err
    code, _, err = run(capsys, "omp", "--p", "32", "--m", "28", "--K", "2", "--certify",
                       "--trials", "20", "--seed", "7")
    assert code == 0 and "exact: 20/20" in err and "certified: 1" in err
    code, out, _ = run(capsys, "omp", "--p", "128", "--K", "2", "--trials", "5", "--seed", "1")
    assert code == 0 and len(rows_of(out)) == 4


def test_usage_errors(capsys):
    for argv in (["projric", "--p", "64", "--m", "48", "--K", "6", "--kI", "6"],
                 ["containment", "--p", "10", "--m", "20", "--K", "4"],
                 ["omp", "--p", "32", "--K", "2", "--certify"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2


def test_format_value():
    assert format_value(1 / 3) == "0.333333333"
    assert format_value(float("nan")) == "nan"
    assert format_value(True) == "1"
    assert format_value(None) == ""
    assert rows_to_csv([{"a": 1, "b": "x"}]) == "a,b\n1,x\n"
