import json

import pytest

from sphyper import pipeline
from sphyper.construct import enumerate_pairs
from sphyper.pipeline import PipelineConfig, RowReport, analyze, check_report, sweep


def test_integral_row(table_rows):
    rep = analyze(table_rows[534])
    assert rep.overall == "ok"
    assert (rep.ilevel, rep.iindex, rep.Pi) == ("1", "1", [])
    assert rep.verified and rep.words_exportable
    assert check_report(rep) == []


def test_non_dense_row_is_reported():
    rep = analyze("C9 | C18")
    assert rep.dense is False
    assert rep.overall == "density: non-dense"
    assert rep.ilevel is None


def test_deterministic(table_rows):
    a = analyze(table_rows[437], PipelineConfig(seed=3))
    b = analyze(table_rows[437], PipelineConfig(seed=3))
    assert a.to_json() == b.to_json()


def test_json_round_trip(table_rows):
    rep = analyze(table_rows[774])
    again = RowReport.from_json(rep.to_json())
    assert again == rep
    assert again.csv_row()["iIndex"] == "2^2*3^2"


def test_time_budget_is_reported():
    rep = analyze("C1^6 | C18", PipelineConfig(time_budget=0.05))
    assert "budget-exceeded" in rep.overall


def test_orbit_budget_is_reported(table_rows):
    rep = analyze(table_rows[838], PipelineConfig(orbit_budget=500))
    assert rep.status["closure"].startswith("budget-exceeded")


def test_tampered_report_is_caught(table_rows):
    rep = analyze(table_rows[774])
    rep.level_value = 4
    assert check_report(rep)


def test_config_file_and_env(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seed": 4, "orbit_budget": 1234}))
    cfg = PipelineConfig.from_file(path)
    assert cfg.seed == 4 and cfg.orbit_budget == 1234
    monkeypatch.setenv("SPHYPER_ORBIT_BUDGET", "99")
    assert cfg.with_env().orbit_budget == 99
    path.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValueError):
        PipelineConfig.from_file(path)
    assert PipelineConfig(workers=4).digest() == PipelineConfig(workers=1).digest()
    assert PipelineConfig(seed=1).digest() != PipelineConfig(seed=2).digest()


def test_sweep_cache_is_idempotent(tmp_path, monkeypatch):
    pairs = enumerate_pairs(4)[:6]
    cfg = PipelineConfig(degree=4, out=str(tmp_path))
    reports, summary = sweep(4, cfg, pairs=pairs)
    assert summary.pairs == 6
    csv1 = (tmp_path / "degree4.csv").read_text()
    rows1 = {p.name: p.read_text() for p in (tmp_path / "rows").iterdir()}

    def boom(*a, **k):
        raise AssertionError("cache miss")

    monkeypatch.setattr(pipeline, "analyze", boom)
    again, _ = sweep(4, cfg, pairs=pairs)
    assert [r.to_json() for r in again] == [r.to_json() for r in reports]
    assert (tmp_path / "degree4.csv").read_text() == csv1
    assert {p.name: p.read_text() for p in (tmp_path / "rows").iterdir()} == rows1


def test_parallel_matches_serial():
    pairs = enumerate_pairs(4)[:4]
    serial, _ = sweep(4, PipelineConfig(degree=4), pairs=pairs)
    parallel, _ = sweep(4, PipelineConfig(degree=4, workers=2), pairs=pairs)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
