"""Tests for configuration, logging setup and check metrics."""

import io
import logging

from common.config import Config, config, reports_dir
from common.logging_config import get_logger, setup_logging
from common.metrics import MetricsTracker, TrialStatus


class TestConfig:
    def test_defaults_are_valid(self):
        assert Config.validate()
        assert config.SOLVER_TOL < config.DEDUP_TOL

    def test_inconsistent_tolerances(self, monkeypatch):
        monkeypatch.setattr(Config, "SOLVER_TOL", 1e-3)
        assert not Config.validate()

    def test_nonpositive_guard(self, monkeypatch):
        monkeypatch.setattr(Config, "ORACLE_STARTS", 0)
        assert not Config.validate()

    def test_reports_dir_is_created(self, isolated_reports, tmp_path):
        assert reports_dir() == isolated_reports
        assert isolated_reports.is_dir()
        assert reports_dir(tmp_path / "other").is_dir()


def test_setup_logging_writes_to_stream():
    stream = io.StringIO()
    setup_logging("DEBUG", stream=stream)
    get_logger("tests.logging").info("hello")
    assert "tests.logging - INFO - hello" in stream.getvalue()
    setup_logging("INFO")
    assert logging.getLogger().level == logging.INFO


class TestMetrics:
    def test_run_lifecycle(self):
        tracker = MetricsTracker()
        tracker.start_check("L-dual", "run-1")
        for status in (TrialStatus.PASS, TrialStatus.PASS, TrialStatus.INCONCLUSIVE, TrialStatus.FAIL):
            tracker.record_outcome("run-1", status)
        metrics = tracker.finish_check("run-1")
        assert metrics.trials == 4
        assert metrics.pass_rate == 0.5
        assert metrics.inconclusive_rate == 0.25
        assert metrics.wall_time >= 0.0

        summary = tracker.get_summary()["L-dual"]
        assert (summary["runs"], summary["passes"], summary["failures"]) == (1, 2, 1)
        assert "| L-dual | 4 | 2 | 1 | 1 |" in tracker.format_summary_report()

    def test_unknown_run(self):
        tracker = MetricsTracker()
        tracker.record_outcome("missing", TrialStatus.PASS)
        assert tracker.finish_check("missing") is None
        assert tracker.get_summary() == {}

    def test_clear(self):
        tracker = MetricsTracker()
        tracker.start_check("P-shift", "r")
        tracker.finish_check("r")
        tracker.clear_metrics()
        assert tracker.get_summary() == {}

    def test_history_keeps_only_recent_runs(self):
        tracker = MetricsTracker(history=3)
        for i in range(5):
            tracker.start_check("L-dual", f"r{i}")
            tracker.finish_check(f"r{i}")
        assert tracker.get_summary()["L-dual"]["runs"] == 3
