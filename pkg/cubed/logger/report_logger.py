"""
Logger for cubed runs.

Writes the run metadata, each check and each rewrite move to a JSON-lines file.
"""

import json
import os
import uuid
from datetime import datetime
from typing import Any

from cubed.core.types import TOOL_VERSION, CheckResult


class ReportLogger:
    """Logger that writes check results and rewrite steps to a JSON-lines file."""

    def __init__(self, log_dir: str, file_name: str = "cubed"):
        self.log_dir = log_dir
        os.makedirs(log_dir, exist_ok=True)

        timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        run_id = str(uuid.uuid4())[:8]
        self.log_file_path = os.path.join(log_dir, f"{file_name}_{timestamp}_{run_id}.jsonl")

        self._entry_count = 0
        self._metadata_logged = False

    def _write(self, entry: dict[str, Any]) -> None:
        with open(self.log_file_path, "a") as f:
            json.dump(entry, f, sort_keys=True)
            f.write("\n")

    def log_metadata(self, command: str, input_digest: str, **extra: Any):
        """Log run metadata as the first entry in the file."""
        if self._metadata_logged:
            return

        self._write(
            {
                "type": "metadata",
                "timestamp": datetime.now().isoformat(),
                "tool_version": TOOL_VERSION,
                "command": command,
                "input_digest": input_digest,
                **extra,
            }
        )
        self._metadata_logged = True

    def log_check(self, check: CheckResult):
        self._entry_count += 1
        self._write(
            {
                "type": "check",
                "entry": self._entry_count,
                "timestamp": datetime.now().isoformat(),
                **check.to_dict(),
            }
        )

    def log_move(self, step: dict[str, Any]):
        """Log one rewrite step, as produced by RewriteStep.to_dict()."""
        self._entry_count += 1
        self._write(
            {
                "type": "move",
                "entry": self._entry_count,
                "timestamp": datetime.now().isoformat(),
                **step,
            }
        )

    @property
    def entry_count(self) -> int:
        return self._entry_count
