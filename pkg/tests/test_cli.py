import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from thermovisco.cli import main, parse_m


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def summary(text):
    return dict(kv.split("=", 1) for kv in text.strip().splitlines()[-1].split())


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {k: np.array([float(r[k]) for r in rows]) for k in rows[0]}


SHAKE = ["shake", "--model", "oldroyd-b", "--eta", "1", "--lambda1", "10", "--lambda2", "1",
         "--omega", "0.75", "--t-end", "4", "--dt", "1e-3"]


def test_shake_oldroyd_b_goes_negative(capsys):
    code, out, err = run(capsys, *SHAKE, "--seed", "0")
    assert code == 0
    s = summary(err)
    assert float(s["min_dissipation"]) < 0
    assert 0 < float(s["first_negative_t"]) < 4
    assert s["m"] == "seed:0"
    assert out.splitlines()[0] == "t,raw_dissipation,augmented_dissipation,free_energy,stress_fro_norm"
    assert len(out.splitlines()) == 4002


def test_shake_zaremba_jaumann_with_free_energy(capsys, tmp_path):
    path = tmp_path / "zj.csv"
    argv = [a if a != "oldroyd-b" else "zaremba-jaumann" for a in SHAKE]
    code, out, _ = run(capsys, *argv, "--free-energy", "zj", "--seed", "0", "--out", str(path))
    assert code == 0
    s = summary(out)
    assert float(s["min_dissipation"]) >= -1e-10
    assert s["first_negative_t"] == "none"
    assert read_csv(path)["augmented_dissipation"].min() >= -1e-10


def test_shake_without_motion(capsys):
    code, _, err = run(capsys, "shake", "--omega", "0.75", "--m", "zero")
    assert code == 0
    assert float(summary(err)["min_dissipation"]) == 0.0


def test_parse_m_projects_trace(caplog):
    m, label = parse_m("1,0,0,0,1,0,0,0,1", 0)
    assert label == "explicit"
    np.testing.assert_array_equal(m, np.zeros((3, 3)))
    assert "trace" in caplog.text
    m, label = parse_m("seed:3", 0)
    assert label == "seed:3" and abs(np.trace(m)) < 1e-15


@pytest.mark.parametrize("bad", ["1,2,3", "seed:x", "a,b,c,d,e,f,g,h,i"])
def test_bad_m_is_a_usage_error(capsys, bad):
    code, _, err = run(capsys, "shake", "--m", bad)
    assert code == 2 and "error" in err


def test_relax_zero_d_maxwell(capsys):
    code, _, err = run(capsys, "relax", "--model", "maxwell0d", "--mu", "1", "--nu", "1", "--t-end", "5",
                       "--alpha", "1")
    assert code == 0
    assert float(summary(err)["final_over_initial"]) == pytest.approx(np.exp(-5), abs=1e-6)


def test_relax_natural_state(capsys):
    code, _, err = run(capsys, "relax", "--model", "maxwell3d-svk", "--alpha", "1", "--t-end", "1")
    assert code == 0
    assert summary(err)["final_over_initial"] == "zero_stress"


def test_relax_dissipation_column_nonnegative(capsys, tmp_path):
    path = tmp_path / "relax.csv"
    code, out, _ = run(capsys, "relax", "--model", "maxwell3d-svk", "--alpha", "1.2", "--out", str(path))
    assert code == 0
    assert float(summary(out)["final_over_initial"]) < 1
    assert read_csv(path)["augmented_dissipation"].min() >= 0


def test_relax_rejects_non_maxwell(capsys):
    assert run(capsys, "relax", "--model", "newtonian")[0] == 2
    assert run(capsys, "relax", "--model", "kelvin-voigt0d")[0] == 2


def test_check_maxwell_passes(capsys):
    code, out, _ = run(capsys, "check", "--model", "maxwell3d-svk", "--samples", "10000", "--seed", "0")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10 and all("pass=true" in line for line in lines)
    assert all(line.startswith("check=") for line in lines)


def test_check_skew_counterexample_needs_both_expected_failures(capsys):
    # the skew stress also does negative work, so cauchy-symmetry is not its only failure
    code, out, _ = run(capsys, "check", "--model", "counterexample-skew", "--expect-fail", "cauchy-symmetry")
    assert code == 1
    assert "check=clausius-planck" in out and "unexpected_fail" in out
    code, out, _ = run(capsys, "check", "--model", "counterexample-skew", "--expect-fail", "cauchy-symmetry",
                       "--expect-fail", "clausius-planck")
    assert code == 0
    assert out.count("expected=fail") == 2


def test_check_oldroyd_b_expected_failure(capsys):
    code, out, _ = run(capsys, "check", "--model", "oldroyd-b", "--expect-fail", "clausius-planck")
    assert code == 0
    code, _, _ = run(capsys, "check", "--model", "oldroyd-b")
    assert code == 1


def test_check_unexpected_pass_is_a_failure(capsys):
    code, out, _ = run(capsys, "check", "--model", "newtonian", "--samples", "500",
                       "--expect-fail", "cauchy-symmetry")
    assert code == 1 and "unexpected_pass" in out


@pytest.mark.parametrize("argv", [
    ["check", "--model", "bingham"],
    ["check", "--model", "newtonian", "--expect-fail", "no-such-check"],
    ["check", "--model", "maxwell0d"],
    ["check", "--model", "newtonian", "--samples", "0"],
    ["check", "--model", "newtonian", "--free-energy", "zj"],
    ["shake", "--dt", "0.3"],
    ["shake", "--model", "newtonian"],
    ["shake", "--mu", "-1"],
    ["shake", "--config", "/nonexistent/params.cfg"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["shake", "--dt", "fast"])
    assert exc.value.code == 2


def test_numerical_failure_exit_3(capsys):
    code, _, err = run(capsys, "shake", "--m", "1e200,0,0,0,-1e200,0,0,0,0")
    assert code == 3 and "non-finite" in err


def test_config_file_and_overrides(capsys, tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("# relaxation rate mu/nu = 2\nmu = 2\nnu = 1\n")
    _, _, err = run(capsys, "relax", "--model", "maxwell0d", "--config", str(cfg), "--alpha", "1", "--t-end", "1")
    assert float(summary(err)["final_over_initial"]) == pytest.approx(np.exp(-2), abs=1e-9)
    _, _, err = run(capsys, "relax", "--model", "maxwell0d", "--config", str(cfg), "--mu", "1", "--alpha", "1",
                    "--t-end", "1")
    assert float(summary(err)["final_over_initial"]) == pytest.approx(np.exp(-1), abs=1e-9)


def test_output_is_byte_identical_across_runs(capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.csv"
        run(capsys, "shake", "--seed", "5", "--t-end", "1", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    reports = [run(capsys, "check", "--model", "newtonian", "--samples", "300")[1] for _ in range(2)]
    assert reports[0] == reports[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thermovisco", "relax", "--model", "maxwell0d", "--t-end", "1",
                           "--dt", "0.01", "--alpha", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    rows = list(csv.reader(io.StringIO(proc.stdout)))
    assert len(rows) == 102
    assert float(rows[-1][4]) == pytest.approx(np.exp(-1), rel=1e-9)
