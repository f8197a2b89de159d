"""Tests for core types."""

import json

from cubed.core.types import (
    CheckResult,
    CubedInputError,
    FormatError,
    Report,
    Stuck,
    _serialize_value,
    fold_verdicts,
)


class TestSerializeValue:
    """Tests for _serialize_value helper."""

    def test_primitives(self):
        assert _serialize_value(None) is None
        assert _serialize_value(True) is True
        assert _serialize_value(42) == 42
        assert _serialize_value("hello") == "hello"

    def test_tuples_become_lists(self):
        assert _serialize_value((1, (2, 3))) == [1, [2, 3]]

    def test_sets_are_sorted(self):
        assert _serialize_value({3, 1, 2}) == [1, 2, 3]

    def test_dict_keys_are_strings(self):
        assert _serialize_value({1: "a"}) == {"1": "a"}

    def test_to_dict_is_used(self):
        check = CheckResult(name="x", verdict="PASS")
        assert _serialize_value(check)["name"] == "x"


class TestFoldVerdicts:
    """Tests for combining check verdicts."""

    def test_empty_is_pass(self):
        assert fold_verdicts([]) == "PASS"

    def test_fail_dominates(self):
        assert fold_verdicts(["PASS", "PARTIAL", "FAIL", "PASS"]) == "FAIL"

    def test_partial_beats_pass(self):
        assert fold_verdicts(["PASS", "PARTIAL"]) == "PARTIAL"


class TestReport:
    """Tests for Report."""

    def _report(self, *verdicts):
        return Report(
            command="validate",
            input_digest="abc",
            checks=[CheckResult(name=f"c{i}", verdict=v) for i, v in enumerate(verdicts)],
        )

    def test_exit_codes(self):
        assert self._report("PASS").exit_code() == 0
        assert self._report("PASS", "FAIL").exit_code() == 1
        assert self._report("PARTIAL").exit_code() == 2

    def test_check_lookup(self):
        report = self._report("PASS", "FAIL")
        assert report.check("c1").verdict == "FAIL"

    def test_round_trip(self):
        report = self._report("PASS", "PARTIAL")
        report.checks[0].locations.append("edge 3")
        report.info["squares"] = 3
        restored = Report.from_dict(json.loads(json.dumps(report.to_dict())))
        assert restored.to_dict() == report.to_dict()

    def test_text_layout(self):
        report = self._report("FAIL")
        report.checks[0].details["degree"] = 3
        report.checks[0].locations.append("edge 0 has degree 3")
        report.checks[0].notes.append("one edge")
        text = report.to_text()
        lines = text.splitlines()
        assert lines[0].startswith("cubed ")
        assert "[FAIL] c0" in lines
        assert "    degree: 3" in lines
        assert "    at edge 0 has degree 3" in lines
        assert "    note: one edge" in lines
        assert lines[-1] == "verdict FAIL"


class TestErrors:
    """Tests for the error hierarchy."""

    def test_input_errors_are_value_errors(self):
        assert issubclass(FormatError, CubedInputError)
        assert issubclass(CubedInputError, ValueError)

    def test_stuck_carries_trace(self):
        err = Stuck("no move", trace=["t"], graph="g")
        assert str(err) == "no move"
        assert err.trace == ["t"]
        assert err.graph == "g"
