from dataclasses import dataclass, field
from typing import Any, Literal

Verdict = Literal["PASS", "FAIL", "PARTIAL"]
ReduceMode = Literal["theorem1", "theorem3"]
OutputFormat = Literal["text", "structured"]

TOOL_VERSION = "0.1.0"

_VERDICT_RANK = {"PASS": 0, "PARTIAL": 1, "FAIL": 2}
_EXIT_CODES = {"PASS": 0, "FAIL": 1, "PARTIAL": 2}
INPUT_ERROR_EXIT = 3


def _serialize_value(value: Any) -> Any:
    """Convert a value to a JSON-serializable representation."""
    if value is None or isinstance(value, bool | int | float | str):
        return value
    if isinstance(value, list | tuple | set | frozenset):
        items = [_serialize_value(v) for v in value]
        if isinstance(value, set | frozenset):
            items.sort(key=repr)
        return items
    if isinstance(value, dict):
        return {str(k): _serialize_value(v) for k, v in value.items()}
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return repr(value)


def fold_verdicts(verdicts: list[Verdict]) -> Verdict:
    """FAIL beats PARTIAL beats PASS; an empty list is a PASS."""
    worst: Verdict = "PASS"
    for verdict in verdicts:
        if _VERDICT_RANK[verdict] > _VERDICT_RANK[worst]:
            worst = verdict
    return worst


########################################################
########         Errors raised on bad input    #########
########################################################


class CubedInputError(ValueError):
    """Input does not describe a valid object; the CLI exits with code 3."""


class FormatError(CubedInputError):
    pass


class DuplicateGluing(CubedInputError):
    pass


class InconsistentInvolution(CubedInputError):
    pass


class BadDihedral(CubedInputError):
    pass


class NotClosedLink(CubedInputError):
    pass


class NotValidated(CubedInputError):
    pass


class RegionGraphError(CubedInputError):
    pass


class GenusWithoutMeridians(CubedInputError):
    pass


class PatternError(CubedInputError):
    pass


class MissingPattern(CubedInputError):
    pass


class MissingStageGraph(CubedInputError):
    pass


class ForbiddenOneGon(CubedInputError):
    pass


class InvalidSite(CubedInputError):
    pass


class Stuck(RuntimeError):
    """No rewrite move applies to a nonempty disk graph."""

    def __init__(self, message: str, trace: Any = None, graph: Any = None):
        super().__init__(message)
        self.trace = trace
        self.graph = graph


########################################################
########        Types for Check Reports        #########
########################################################


@dataclass
class CheckResult:
    """One named check with its verdict and the locations that decided it."""

    name: str
    verdict: Verdict
    details: dict[str, Any] = field(default_factory=dict)
    locations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self):
        return {
            "name": self.name,
            "verdict": self.verdict,
            "details": _serialize_value(self.details),
            "locations": list(self.locations),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckResult":
        return cls(
            name=data.get("name"),
            verdict=data.get("verdict"),
            details=data.get("details", {}),
            locations=data.get("locations", []),
            notes=data.get("notes", []),
        )


@dataclass
class Report:
    command: str
    input_digest: str
    checks: list[CheckResult] = field(default_factory=list)
    certificate: str | None = None
    info: dict[str, Any] = field(default_factory=dict)
    tool_version: str = TOOL_VERSION

    @property
    def verdict(self) -> Verdict:
        return fold_verdicts([check.verdict for check in self.checks])

    def exit_code(self) -> int:
        return _EXIT_CODES[self.verdict]

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(f"No check named {name!r} in report")

    def to_dict(self):
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "input_digest": self.input_digest,
            "verdict": self.verdict,
            "checks": [check.to_dict() for check in self.checks],
            "certificate": self.certificate,
            "info": _serialize_value(self.info),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            command=data.get("command"),
            input_digest=data.get("input_digest"),
            checks=[CheckResult.from_dict(c) for c in data.get("checks", [])],
            certificate=data.get("certificate"),
            info=data.get("info", {}),
            tool_version=data.get("tool_version", TOOL_VERSION),
        )

    def to_text(self) -> str:
        lines = [
            f"cubed {self.tool_version} {self.command}",
            f"input sha256 {self.input_digest}",
        ]
        for key in sorted(self.info):
            lines.append(f"info {key}: {_serialize_value(self.info[key])}")
        for check in self.checks:
            lines.append(f"[{check.verdict}] {check.name}")
            for key in sorted(check.details):
                lines.append(f"    {key}: {_serialize_value(check.details[key])}")
            for location in check.locations:
                lines.append(f"    at {location}")
            for note in check.notes:
                lines.append(f"    note: {note}")
        lines.append(f"verdict {self.verdict}")
        if self.certificate:
            lines.append(f"certificate {self.certificate}")
        return "\n".join(lines) + "\n"
