"""Tests for run configuration and the JSONL logger."""

import json

import pytest

from cubed.core.types import CheckResult
from cubed.logger import ReportLogger
from cubed.utils.config import DEFAULT_MAX_REWRITE_STEPS, DEFAULT_SCAN_BOUND, CubedConfig


class TestCubedConfig:
    """Tests for CubedConfig."""

    def test_defaults(self, monkeypatch):
        for name in ("CUBED_LOG_DIR", "CUBED_VERBOSE", "CUBED_FORMAT", "CUBED_SCAN_BOUND", "CUBED_MAX_REWRITE_STEPS"):
            monkeypatch.delenv(name, raising=False)
        config = CubedConfig()
        assert config.log_dir is None
        assert config.verbose is False
        assert config.scan_bound == DEFAULT_SCAN_BOUND
        assert config.max_rewrite_steps == DEFAULT_MAX_REWRITE_STEPS
        assert config.output_format == "text"

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("CUBED_VERBOSE", "yes")
        monkeypatch.setenv("CUBED_SCAN_BOUND", "7")
        monkeypatch.setenv("CUBED_FORMAT", "structured")
        config = CubedConfig()
        assert config.verbose is True
        assert config.scan_bound == 7
        assert config.output_format == "structured"

    def test_explicit_values_win(self, monkeypatch):
        monkeypatch.setenv("CUBED_FORMAT", "structured")
        assert CubedConfig(output_format="text").output_format == "text"

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="Unknown output format"):
            CubedConfig(output_format="xml")


class TestReportLogger:
    """Tests for ReportLogger."""

    def test_entries(self, tmp_path):
        logger = ReportLogger(str(tmp_path / "logs"))
        logger.log_metadata("validate", "abc", source="t3.cubes")
        logger.log_metadata("validate", "abc")
        logger.log_check(CheckResult(name="edge_degree", verdict="PASS"))
        logger.log_move({"index": 1, "move": {"kind": "BOUNDARY_2GON"}})
        assert logger.entry_count == 2

        with open(logger.log_file_path) as f:
            entries = [json.loads(line) for line in f]
        assert [e["type"] for e in entries] == ["metadata", "check", "move"]
        assert entries[0]["source"] == "t3.cubes"
        assert entries[1]["name"] == "edge_degree"
        assert entries[2]["entry"] == 2
