import os

from src.config import Config, config


def test_defaults_are_consistent():
    assert Config.validate()
    assert config.GRASP_MATCHER in ("jv", "nn", "greedy")
    assert config.DENSE_EIGEN_LIMIT > 0


def test_validate_rejects_bad_values(monkeypatch, capsys):
    monkeypatch.setattr(Config, "GRASP_K", 0)
    assert not Config.validate()
    assert "GRASP_K" in capsys.readouterr().err

    monkeypatch.setattr(Config, "GRASP_K", 20)
    monkeypatch.setattr(Config, "GRASP_T_MIN", 60.0)
    assert not Config.validate()


def test_bench_jobs(monkeypatch):
    monkeypatch.setattr(Config, "BENCH_JOBS", 3)
    assert Config.bench_jobs() == 3

    monkeypatch.setattr(Config, "BENCH_JOBS", 0)
    assert Config.bench_jobs() == (os.cpu_count() or 1)
