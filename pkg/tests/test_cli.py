import json
import math

from hgpoly import cli
from hgpoly.certify import CheckResult
from hgpoly.spectral import EigensolverError


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


BASE_H = ["--family", "H", "--mu", "0", "--nu", "0", "--alpha", "1",
          "--theta", str(math.pi / 2)]
BASE_G = ["--family", "G", "--mu", "0", "--nu", "0", "--sigma", "1"]


def test_eval_H_degree_zero_rows(capsys):
    code, out, err = run(capsys, ["eval", *BASE_H, "--n", "0", "--z-grid", "0.3,1.5"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,z,value"
    assert [ln.split(",")[2] for ln in lines[1:]] == ["1", "1"]
    assert err == ""


def test_eval_G_degree_zero(capsys):
    code, out, _ = run(capsys, ["eval", *BASE_G, "--n", "0", "--z-grid", "-2.5"])
    assert code == 0
    assert out.strip().splitlines()[1] == "0,-2.5,1"


def test_eval_monic_and_linspace_grid(capsys):
    code, out, _ = run(capsys, ["eval", *BASE_G, "--n", "1", "--monic",
                                "--z-grid", "0:1:3"])
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 6  # degrees 0..1, three z points, n-major ordering
    assert rows[0].startswith("0,0,") and rows[3].startswith("1,0,")


def test_eval_extended_precision(capsys):
    code, out, _ = run(capsys, ["eval", *BASE_G, "--n", "3", "--z-grid", "0.5",
                                "--precision", "extended"])
    assert code == 0
    assert len(out.strip().splitlines()) == 5


def test_theta_zero_exit_2_names_invariant(capsys):
    code, out, err = run(capsys, ["eval", "--family", "H", "--mu", "0", "--nu", "0",
                                  "--alpha", "1", "--theta", "0",
                                  "--n", "1", "--z-grid", "1"])
    assert code == 2
    assert out == ""
    assert "sin(theta)" in err


def test_missing_sigma_exit_2(capsys):
    code, _, err = run(capsys, ["eval", "--family", "G", "--mu", "0", "--nu", "0",
                                "--n", "1", "--z-grid", "1"])
    assert code == 2
    assert "sigma" in err


def test_spectrum_single_point(capsys):
    code, out, _ = run(capsys, ["spectrum", *BASE_G, "--N", "1"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,node,weight"
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[2]) == 1.0


def test_spectrum_family_H_columns_and_mass(capsys):
    code, out, _ = run(capsys, ["spectrum", *BASE_H, "--N", "24"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,node,weight,abs_eig_sum,tail_estimate"
    weights = [float(ln.split(",")[2]) for ln in lines[1:]]
    assert abs(sum(weights) - 1.0) < 1e-12


def test_spectrum_json_format(capsys):
    code, out, _ = run(capsys, ["spectrum", *BASE_H, "--N", "6",
                                "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["N"] == 6
    assert len(payload["nodes"]) == 6
    assert "abs_eig_sum" in payload


def test_spectrum_eigensolver_failure_exit_3(capsys, monkeypatch):
    def boom(T):
        raise EigensolverError("no convergence")
    monkeypatch.setattr(cli, "eigensystem", boom)
    code, out, err = run(capsys, ["spectrum", *BASE_H, "--N", "4"])
    assert code == 3
    assert "eigensolver failure" in err


def test_qtable_column_zero_and_flags(capsys):
    code, out, _ = run(capsys, ["qtable", *BASE_H, "--nmax", "60", "--kmax", "6",
                                "--z-grid", "0", "--radius", "1"])
    assert code == 0
    lines = out.strip().splitlines()
    c0 = [ln for ln in lines if ln.startswith("c,") and ln.split(",")[2] == "0"]
    assert all(float(ln.split(",")[4]) == 1.0 for ln in c0)
    qrow = [ln for ln in lines if ln.startswith("q,")][0].split(",")
    assert float(qrow[4]) == 1.0 and float(qrow[5]) == 0.0  # Q(0) = (1, 0)
    limits = [ln for ln in lines if ln.startswith("limit,")]
    assert limits[0].split(",")[6] == "1"  # column 0 converged


def test_qtable_undersized_run_reports_unconverged_columns(capsys):
    code, out, _ = run(capsys, ["qtable", *BASE_H, "--nmax", "8", "--kmax", "8"])
    assert code == 0
    flags = [ln.split(",")[6] for ln in out.strip().splitlines()
             if ln.startswith("limit,")]
    assert "0" in flags


def test_qtable_radius_not_certified_exit_4(capsys):
    code, _, err = run(capsys, ["qtable", *BASE_H, "--nmax", "40", "--kmax", "8",
                                "--z-grid", "50"])
    assert code == 4
    assert "radius" in err.lower()


def test_qtable_rejects_family_G(capsys):
    code, _, err = run(capsys, ["qtable", *BASE_G])
    assert code == 2
    assert "family H" in err


def test_deterministic_output(capsys, tmp_path):
    argv = ["qtable", *BASE_H, "--nmax", "40", "--kmax", "14",
            "--z-grid", "0.1,0.5", "--radius", "0.5,1"]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert cli.main(argv + ["--out", str(out1)]) == 0
    assert cli.main(argv + ["--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_io_failure_exit_1(capsys):
    code, _, err = run(capsys, ["eval", *BASE_G, "--n", "0", "--z-grid", "1",
                                "--out", "/nonexistent-dir/x.csv"])
    assert code == 1
    assert "i/o failure" in err


def _fake_results(all_pass):
    res = [CheckResult(1, "stub one", True, 1e-12, 1e-9, "d1"),
           CheckResult(2, "stub two", all_pass, 2e-3, 1e-3, "d2")]
    return res


def test_certify_pass_report(capsys, monkeypatch):
    monkeypatch.setattr(cli.certify, "run_all", lambda: _fake_results(True))
    code, out, err = run(capsys, ["certify"])
    assert code == 0
    assert "wilson_convention=x-squared" in out
    assert err == ""


def test_certify_failure_exit_5(capsys, monkeypatch):
    monkeypatch.setattr(cli.certify, "run_all", lambda: _fake_results(False))
    code, out, err = run(capsys, ["certify", "--format", "json"])
    assert code == 5
    payload = json.loads(out)
    assert payload["verdict"] == "fail"
    assert payload["wilson_convention"] == "x-squared"
    assert "stub two" in err


def test_z_grid_parsing_errors(capsys):
    code, _, err = run(capsys, ["eval", *BASE_G, "--n", "1", "--z-grid", "1:2"])
    assert code == 2
    assert "start:stop:count" in err
