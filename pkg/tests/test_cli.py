import json

import numpy as np
import pytest

from holopath import analytic, cli


def run(args):
    return cli.main([str(a) for a in args])


# -------------------------------------------------------------------- figure1


def test_figure1_two_samples_endpoints(tmp_path):
    out = tmp_path / "fig.csv"
    assert run(["figure1", "--samples", 2, "--out", out]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "theta,f1,f2,f3"
    first = [float(x) for x in lines[1].split(",")]
    last = [float(x) for x in lines[2].split(",")]
    assert first == [0.0, 0.0, 0.0, 0.0]
    assert last[0] == pytest.approx(np.pi / 2, abs=1e-14)
    assert last[1] == pytest.approx(2 - np.sqrt(2), abs=1e-12)
    assert last[2] == pytest.approx(1.0, abs=1e-12)
    assert last[3] == pytest.approx(1.0, abs=1e-12)


def test_figure1_monotone_and_dominant(tmp_path):
    out = tmp_path / "fig.csv"
    assert run(["figure1", "--samples", 101, "--out", out]) == 0
    data = np.genfromtxt(out, delimiter=",", skip_header=1)
    theta, c1, c2, c3 = data.T
    assert np.all(np.diff(c1) >= 0) and np.all(np.diff(c2) >= 0) and np.all(np.diff(c3) >= 0)
    inner = theta > 0
    assert np.all(c1[inner] < c2[inner]) and np.all(c1[inner] < c3[inner])


def test_figure1_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["figure1", "--samples", 33, "--out", a])
    run(["figure1", "--samples", 33, "--out", b])
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_figure1_bad_samples(tmp_path):
    assert run(["figure1", "--samples", 1, "--out", tmp_path / "x.csv"]) == 2


def test_figure1_unwritable_path(tmp_path):
    assert run(["figure1", "--samples", 5, "--out", tmp_path / "no_dir" / "x.csv"]) == 4


def test_figure1_missing_out():
    assert run(["figure1", "--samples", 5]) == 2


# ---------------------------------------------------------------------- sweep


def test_sweep_two_loop_fixture(tmp_path):
    out = tmp_path / "sweep.json"
    code = run(
        ["sweep", "--scheme", "two-loop", "--theta-gate", 0.5, "--axis", "0,0,1",
         "--epsilon", "0,0.001", "--out", out]
    )
    assert code == 0
    records = json.loads(out.read_text())
    assert len(records) == 2
    zero, small = records
    assert zero["epsilon"] == 0.0
    assert zero["fidelity_exact"] == pytest.approx(1.0, abs=1e-12)
    assert small["fidelity_exact"] == pytest.approx(1 - 1.9272e-6, abs=1e-9)
    assert small["abs_gap"] <= 1e-9
    assert small["params"]["phi_b"] == pytest.approx(np.pi, abs=1e-12)


def test_sweep_record_count_and_order(tmp_path):
    out = tmp_path / "sweep.json"
    code = run(
        ["sweep", "--scheme", "two-loop", "--theta-gate", 0.25, "--axis", "1,0,0",
         "--epsilon", "0.01,-0.01,0.001", "--kappa", "0,0.005", "--out", out]
    )
    assert code == 0
    records = json.loads(out.read_text())
    assert len(records) == 6
    keys = [(r["epsilon"], r["kappa"]) for r in records]
    assert keys == sorted(keys)


def test_sweep_kappa_rejected_for_single_loop(tmp_path):
    code = run(
        ["sweep", "--scheme", "single-loop", "--theta-gate", 0.25, "--axis", "1,0,0",
         "--epsilon", "0.01", "--kappa", "0.001", "--out", tmp_path / "x.json"]
    )
    assert code == 2


def test_sweep_single_shot(tmp_path):
    out = tmp_path / "ss.json"
    code = run(
        ["sweep", "--scheme", "single-shot", "--theta-gate", 0.25, "--axis", "1,0,0",
         "--epsilon", "0.001", "--out", out]
    )
    assert code == 0
    (record,) = json.loads(out.read_text())
    assert record["params"]["gamma"] == pytest.approx(np.pi / 6, abs=1e-12)
    assert record["fidelity_exact"] == pytest.approx(1 - 1.8506e-6, abs=1e-9)


# ------------------------------------------------------------------- optimize


def test_optimize_quarter_pi_z_axis(tmp_path, capsys):
    assert run(["optimize", "--theta-gate", 0.5, "--axis", "0,0,1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    two = payload["two_loop"]
    assert two["theta1"] == pytest.approx(np.pi / 2, abs=1e-12)
    assert two["theta2"] == pytest.approx(np.pi / 2, abs=1e-12)
    assert two["phi_b"] == pytest.approx(np.pi, abs=1e-12)
    assert abs(two["cos_theta_sum"]) <= 1e-12
    coeffs = payload["coefficients"]
    assert coeffs["two_loop"] == pytest.approx(1.9272, abs=1e-4)
    assert coeffs["single_loop"] == pytest.approx(3.2899, abs=1e-4)
    assert coeffs["single_shot"] == pytest.approx(3.2899, abs=1e-4)


def test_optimize_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["optimize", "--theta-gate", 0.3, "--axis", "0.2,-0.5,0.6", "--out", a])
    run(["optimize", "--theta-gate", 0.3, "--axis", "0.2,-0.5,0.6", "--out", b])
    assert a.read_bytes() == b.read_bytes()


def test_optimize_degenerate_identity(tmp_path, capsys):
    assert run(["optimize", "--theta-gate", 0, "--axis", "0,0,1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["two_loop"]["degenerate"] is True
    assert "note" in payload


def test_optimize_bad_axis():
    assert run(["optimize", "--theta-gate", 0.5, "--axis", "0,0"]) == 2
    assert run(["optimize", "--theta-gate", 0.5, "--axis", "0,0,0"]) == 2


# --------------------------------------------------------------------- config


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# figure1 settings\nsamples = 11\nout = {}\n".format(tmp_path / "cfg.csv"))
    assert run(["figure1", "--config", cfg]) == 0
    assert (tmp_path / "cfg.csv").exists()
    lines = (tmp_path / "cfg.csv").read_text().splitlines()
    assert len(lines) == 12


def test_config_flag_overrides_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"samples=11\nout={tmp_path / 'a.csv'}\n")
    assert run(["figure1", "--samples", 3, "--config", cfg]) == 0
    assert len((tmp_path / "a.csv").read_text().splitlines()) == 4


def test_config_unknown_key_rejected(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("samples=11\nbogus=1\n")
    assert run(["figure1", "--config", cfg, "--out", tmp_path / "x.csv"]) == 2


def test_config_malformed_line(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("samples 11\n")
    assert run(["figure1", "--config", cfg, "--out", tmp_path / "x.csv"]) == 2


def test_unknown_command_usage_error():
    assert run(["frobnicate"]) == 2


# --------------------------------------------------------------------- verify


def test_verify_negative_control_corrupted_f1(monkeypatch, capsys):
    # corrupting f1 must break the dominance criterion and exit nonzero
    monkeypatch.setattr(analytic, "f1", lambda theta: 3.0 * np.asarray(theta, dtype=float) ** 0)
    code = run(["verify", "--level", "fast"])
    out = capsys.readouterr().out
    assert code == 3
    assert "FAIL" in out
    assert "criterion-1 figure1" in out
    assert "dominance" in out


def test_verify_reports_all_criteria_names(monkeypatch, capsys):
    # stub out the heavy checks: this test only exercises the reporting shell
    from holopath import verify

    def fake_suite(level="fast", seed=0):
        return [verify.CheckResult(f"criterion-{i}", True, "stub", 0.0) for i in range(1, 9)]

    monkeypatch.setattr(verify, "run_suite", fake_suite)
    assert run(["verify"]) == 0
    out = capsys.readouterr().out
    assert "8/8 criteria passed" in out
