"""End-to-end command-line behavior via main(argv)."""

import json

import pytest

from preytaxis.cli import main

BASE = "grid.n = 16\nrun.t_end = 0.2\nrun.sample_every = 0.1\n"


def write_cfg(tmp_path, extra="", name="run.cfg"):
    out = tmp_path / "out"
    path = tmp_path / name
    path.write_text(BASE + f"output.dir = {out}\n" + extra)
    return path, out


def test_run_subcommand(tmp_path):
    cfg, out = write_cfg(tmp_path)
    assert main(["run", str(cfg)]) == 0
    assert (out / "diagnostics.csv").exists()
    assert (out / "manifest.json").exists()
    assert not (out / "energy.svg").exists()


def test_run_subcommand_svg(tmp_path):
    cfg, out = write_cfg(tmp_path)
    assert main(["run", str(cfg), "--svg"]) == 0
    assert (out / "energy.svg").exists()


def test_run_missing_config_is_usage_error(tmp_path):
    assert main(["run", str(tmp_path / "absent.cfg")]) == 3


def test_run_invalid_value_is_usage_error(tmp_path):
    cfg, _ = write_cfg(tmp_path, extra="params.chi = -2\n")
    assert main(["run", str(cfg)]) == 3


def test_run_blowup_exit_code(tmp_path):
    cfg, out = write_cfg(tmp_path, extra="initial.u_base = 1e13\n")
    assert main(["run", str(cfg)]) == 2
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["termination"].startswith("blowup:")


def test_sweep_subcommand(tmp_path, monkeypatch):
    monkeypatch.setenv("PREYTAXIS_WORKERS", "1")
    cfg, out = write_cfg(tmp_path)
    assert main(["sweep", str(cfg), "--axis", "params.chi", "--values", "0.5,1.0"]) == 0
    summary = (out / "sweep_summary.csv").read_text().strip().splitlines()
    assert len(summary) == 3
    assert (out / "params_chi_0.5" / "manifest.json").exists()


def test_sweep_bad_axis(tmp_path):
    cfg, _ = write_cfg(tmp_path)
    assert main(["sweep", str(cfg), "--axis", "grid.n", "--values", "32"]) == 3


def test_sweep_bad_values(tmp_path):
    cfg, _ = write_cfg(tmp_path)
    assert main(["sweep", str(cfg), "--axis", "params.chi", "--values", "a,b"]) == 3


def test_accept_single_criterion(capsys):
    assert main(["accept", "--criteria", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS criterion 2:")


def test_accept_rejects_unknown_criterion():
    assert main(["accept", "--criteria", "99"]) == 3


def test_oracle_heat(capsys):
    assert main(["oracle", "heat"]) == 0
    assert "order" in capsys.readouterr().out


def test_oracle_ode(capsys):
    assert main(["oracle", "ode"]) == 0
    assert "gap" in capsys.readouterr().out


def test_bad_subcommand_is_usage_error():
    assert main(["frobnicate"]) == 3
    assert main([]) == 3


def test_bad_flag_is_usage_error(tmp_path):
    cfg, _ = write_cfg(tmp_path)
    assert main(["run", str(cfg), "--loud"]) == 3
