"""Scenario execution, run directories, manifests, and sweeps."""

import json
import math

import pytest

from preytaxis import ConfigError, build_config, execute, format_csv, parse_items, run_scenario, sweep
from preytaxis.runner import worker_count

BASE = "grid.n = 16\nrun.t_end = 0.2\nrun.sample_every = 0.1\n"


def small_config(extra="", out_dir=None):
    items = parse_items(BASE)
    items.update(parse_items(extra))
    if out_dir is not None:
        items["output.dir"] = str(out_dir)
    return build_config(items)


def test_execute_small_run():
    result = execute(small_config("run.t_end = 0.5"))
    assert result.ok
    assert result.status == "completed"
    assert len(result.records) == 6  # t = 0.0 .. 0.5 in steps of 0.1
    assert result.records[0].t == 0.0
    assert result.final_state.t == 0.5
    assert result.certificate is not None and result.certificate.holds
    assert result.certificate_reason is None
    assert result.accounting.steps > 0
    assert result.wall_clock > 0


def test_execute_without_certificate_still_tracks_energy():
    # chi = 3 violates the smallness condition at the default parameters
    result = execute(small_config("params.chi = 3.0"))
    assert result.ok
    assert result.certificate is None
    assert "condition fails" in result.certificate_reason
    assert all(math.isfinite(r.energy) for r in result.records)


def test_run_scenario_writes_directory(tmp_path):
    out = tmp_path / "run"
    code = run_scenario(small_config(out_dir=out))
    assert code == 0
    for name in ("initial_u.txt", "initial_v.txt", "final_u.txt", "final_v.txt",
                 "diagnostics.csv", "manifest.json"):
        assert (out / name).exists(), name
    assert not (out / "energy.svg").exists()  # svg defaults off

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["termination"] == "completed"
    assert manifest["steps"] > 0
    assert manifest["config"]["grid.n"] == "16"
    assert manifest["certificate"]["holds"] is True
    assert manifest["certificate"]["m2_relaxed"] > 2.0
    assert manifest["peak_v"] >= 1.0

    csv = (out / "diagnostics.csv").read_text().strip().splitlines()
    assert len(csv) == 1 + 3  # header + samples at 0, 0.1, 0.2


def test_run_scenario_svg_charts(tmp_path):
    out = tmp_path / "run"
    code = run_scenario(small_config(out_dir=out), svg=True)
    assert code == 0
    for name in ("energy.svg", "dissipation.svg", "distances.svg"):
        text = (out / name).read_text()
        assert text.startswith("<svg")
        assert "polyline" in text


def test_run_scenario_blowup(tmp_path):
    out = tmp_path / "boom"
    code = run_scenario(small_config("initial.u_base = 1e13", out_dir=out))
    assert code == 2
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["termination"].startswith("blowup:")
    assert (out / "initial_u.txt").exists()
    assert not (out / "final_u.txt").exists()  # no final state to save
    # the t = 0 sample was still captured
    assert len((out / "diagnostics.csv").read_text().strip().splitlines()) == 2


def test_execute_is_deterministic():
    cfg = small_config("initial.kind = cosine\ninitial.u_amp = 0.3\ninitial.v_amp = 0.2")
    a = execute(cfg)
    b = execute(cfg)
    assert format_csv(a.records) == format_csv(b.records)


def read_summary(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_sweep_sequential(tmp_path, monkeypatch):
    monkeypatch.setenv("PREYTAXIS_WORKERS", "1")
    items = parse_items(BASE)
    summary = sweep(items, "params.chi", [0.5, 1.0], out_dir=str(tmp_path))
    assert summary == tmp_path / "sweep_summary.csv"
    rows = read_summary(summary)
    assert [r["value"] for r in rows] == ["0.5", "1"]
    assert all(r["status"] == "completed" for r in rows)
    assert all(float(r["t_final"]) == 0.2 for r in rows)
    for tag in ("params_chi_0.5", "params_chi_1"):
        assert (tmp_path / tag / "manifest.json").exists()


def test_sweep_parallel(tmp_path, monkeypatch):
    monkeypatch.setenv("PREYTAXIS_WORKERS", "2")
    items = parse_items(BASE)
    summary = sweep(items, "params.eps", [0.0, 0.1], out_dir=str(tmp_path))
    rows = read_summary(summary)
    assert len(rows) == 2
    assert all(r["status"] == "completed" for r in rows)


def test_sweep_records_member_failures(tmp_path, monkeypatch):
    monkeypatch.setenv("PREYTAXIS_WORKERS", "1")
    items = parse_items(BASE)
    rows = read_summary(sweep(items, "params.d1", [1.0, -1.0], out_dir=str(tmp_path)))
    assert rows[0]["status"] == "completed"
    assert rows[1]["status"].startswith("config-error")


def test_sweep_validation(tmp_path):
    items = parse_items(BASE)
    with pytest.raises(ConfigError):
        sweep(items, "params.chi", [], out_dir=str(tmp_path))
    with pytest.raises(ConfigError):
        sweep(items, "grid.n", [32.0], out_dir=str(tmp_path))
    with pytest.raises(ConfigError):
        sweep({"params.chi": "-5"}, "params.eps", [0.0], out_dir=str(tmp_path))


def test_worker_count(monkeypatch):
    monkeypatch.setenv("PREYTAXIS_WORKERS", "3")
    assert worker_count(8) == 3
    assert worker_count(2) == 2
    monkeypatch.setenv("PREYTAXIS_WORKERS", "x")
    with pytest.raises(ConfigError):
        worker_count(4)
    monkeypatch.setenv("PREYTAXIS_WORKERS", "0")
    with pytest.raises(ConfigError):
        worker_count(4)
    monkeypatch.delenv("PREYTAXIS_WORKERS")
    assert 1 <= worker_count(4) <= 4
