import csv
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from nuflavor import qft_model
from nuflavor.cli import main
from nuflavor.multiqubit import Bipartition, linear_entropy
from nuflavor.qm_model import theta_from_sin2
from nuflavor.sweep import QFT_COLUMNS, QM_COLUMNS, SweepConfig, format_float, run_sweep
from nuflavor.verify import run_verify

GOLDEN = Path(__file__).parent / "golden"
TWO_PI = "6.283185307179586"


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(v) for v in row] for row in rows[1:]]


@pytest.mark.parametrize("model, golden", [("qm", "qm_steps9.csv"), ("qft", "qft_steps9.csv")])
def test_sweep_matches_golden(model, golden, tmp_path):
    out = tmp_path / "out.csv"
    assert main(["sweep", "--model", model, "--steps", "9", "--tau-max", TWO_PI, "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / golden).read_bytes()


def test_golden_headers():
    assert tuple(read_csv(GOLDEN / "qm_steps9.csv")[0]) == QM_COLUMNS
    assert tuple(read_csv(GOLDEN / "qft_steps9.csv")[0]) == QFT_COLUMNS
    assert len(QFT_COLUMNS) == 14


def test_qft_golden_agrees_with_partial_trace_oracle():
    theta = theta_from_sin2(0.314)
    header, rows = read_csv(GOLDEN / "qft_steps9.csv")
    modes = qft_model.FLAVOR_MODES
    for row in rows:
        rec = dict(zip(header, row))
        st = qft_model.state_flavor_basis(theta, 10.0, 5.0, rec["tau"])
        singles = [linear_entropy(st, Bipartition.of(modes, [m])) for m in modes]
        doubles = [linear_entropy(st, Bipartition.of(modes, side))
                   for side in qft_model.BALANCED_SIDES["flavor"]]
        got = [rec[c] for c in QFT_COLUMNS[1:5]] + [rec[c] for c in QFT_COLUMNS[6:9]]
        np.testing.assert_allclose(got, singles + doubles, atol=1e-10)
        assert rec["avg_1v3"] == pytest.approx(np.mean(singles), abs=1e-10)
        assert rec["avg_2v2"] == pytest.approx(np.mean(doubles), abs=1e-10)
        probs = [rec[c] for c in QFT_COLUMNS[10:]]
        assert sum(probs) == pytest.approx(1.0, abs=1e-11)


def test_qm_sweep_rows():
    cols, rows = run_sweep(SweepConfig(model="qm", steps=50))
    assert cols == QM_COLUMNS
    first = dict(zip(cols, rows[0]))
    assert first["tau"] == 0 and first["S_flavor"] == 0 and first["N_e"] == 1
    for row in rows:
        assert dict(zip(cols, row))["S_mass"] == pytest.approx(0.861616, abs=1e-12)
    taus = [r[0] for r in rows]
    assert taus == sorted(taus) and taus[-1] == pytest.approx(4 * np.pi)


def test_default_config_values():
    cfg = SweepConfig()
    assert (cfg.sin2theta, cfg.x, cfg.p, cfg.steps) == (0.314, 10.0, 5.0, 800)
    assert cfg.tau_max == pytest.approx(4 * np.pi)
    grid = cfg.tau_grid()
    assert grid[0] == 0 and grid[-1] == cfg.tau_max and len(grid) == 800


def test_nu_e_entropy_has_no_fast_component():
    # S(nu_e; rest) depends on tau only through sin^2(tau/2); the antiparticle-driven
    # terms oscillate at (w2 + w1)/(w2 - w1) times that rate
    cols, rows = run_sweep(SweepConfig(steps=2001))
    data = np.array(rows)
    tau = data[:, 0]
    kin = qft_model.kinematics(10.0, 5.0)
    pe = kin.U**2 * np.sin(2 * theta_from_sin2(0.314)) ** 2 * np.sin(tau / 2) ** 2
    np.testing.assert_allclose(data[:, cols.index("S_nu_e")], 4 * pe * (1 - pe), atol=1e-12)

    def curvature(name):
        y = data[:, cols.index(name)]
        return np.abs(np.diff(y, 2)).max() / np.ptp(y)

    for name in ("S_nu_mu", "S_nubar_e", "S_nubar_mu"):
        assert curvature(name) > 10 * curvature("S_nu_e")


@pytest.mark.parametrize("model", ["qm", "qft"])
def test_sweep_is_deterministic(model, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["sweep", "--model", model, "--steps", "300", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("args", [
    ["--sin2theta", "1.5"],
    ["--sin2theta", "0"],
    ["--x", "-1"],
    ["--x", "1"],
    ["--p", "-2"],
    ["--steps", "1"],
    ["--tau-max", "0"],
])
def test_sweep_rejects_bad_config(args, tmp_path, capsys):
    assert main(["sweep", *args, "--out", str(tmp_path / "x.csv")]) != 0
    assert "error" in capsys.readouterr().err


def test_sweep_unwritable_path(tmp_path, capsys):
    assert main(["sweep", "--steps", "3", "--out", str(tmp_path / "missing" / "x.csv")]) != 0
    assert "error" in capsys.readouterr().err


def test_format_float():
    assert format_float(0.861616) == "0.861616"
    assert format_float(-0.0) == "0"
    assert format_float(1 / 3) == "0.333333333333"
    assert format_float(1e-20) == "1e-20"


def test_bogoliubov_command(capsys):
    assert main(["bogoliubov", "--x", "1", "--p", "3"]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert float(out["U"]) == 1.0 and float(out["V"]) == 0.0

    assert main(["bogoliubov", "--x", "10", "--p", "5"]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert out["U"] == "0.96881571011"
    assert out["V"] == "0.247782404225"
    assert out["omega1"] == "15.8429795178"
    assert out["omega2"] == "18.7082869339"

    assert main(["bogoliubov", "--x", "10", "--p", "1e4", "--format", "csv"]) == 0
    header, values = capsys.readouterr().out.splitlines()
    rec = dict(zip(header.split(","), map(float, values.split(","))))
    assert 1 - rec["U"] ** 2 < 1e-4
    assert rec["U2_plus_V2"] == 1.0


def test_bogoliubov_rejects(capsys):
    assert main(["bogoliubov", "--x", "0", "--p", "3"]) != 0
    assert main(["bogoliubov", "--x", "2", "--p", "-3"]) != 0


def test_verify_report_passes_and_is_deterministic():
    a = run_verify(seed=11, trials=1000)
    assert a.passed, a.to_text()
    assert a.to_text() == run_verify(seed=11, trials=1000).to_text()
    for value in a.ratios.values():
        assert value == pytest.approx(0.375, abs=1e-10)


def test_verify_zero_trials_still_runs_grid_checks():
    report = run_verify(seed=0, trials=0)
    names = [c.name for c in report.checks]
    assert report.passed
    assert "qft: 14 closed-form entropies vs oracle" in names
    assert not any(n.startswith("multiqubit") for n in names)


def test_verify_exit_code_and_csv(capsys):
    assert main(["verify", "--trials", "5", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "kind,name,max_error,tolerance,passed"
    assert all(line.endswith(",1") for line in lines if line.startswith("check,"))
    assert sum(line.startswith("ratio,") for line in lines) == 3


def test_verify_failure_exit_code(monkeypatch):
    from nuflavor import verify

    def broken(report):
        report.add("deliberately failing", [1.0], 1e-12)

    monkeypatch.setattr(verify, "_qft_grid_checks", broken)
    assert main(["verify", "--trials", "0"]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "nuflavor.cli", "bogoliubov", "--x", "10", "--p", "5"],
        capture_output=True, text=True, check=True,
    )
    assert "0.96881571011" in proc.stdout
