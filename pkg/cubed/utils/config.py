import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()

DEFAULT_SCAN_BOUND = 5
DEFAULT_MAX_REWRITE_STEPS = 10000
OUTPUT_FORMATS = ("text", "structured")


def _flag(value: str | None) -> bool:
    return (value or "").strip().lower() in ("1", "true", "yes", "on")


@dataclass
class CubedConfig:
    """Run settings; anything left as None is read from the environment (or a .env file)."""

    log_dir: str | None = None
    verbose: bool | None = None
    scan_bound: int | None = None
    max_rewrite_steps: int | None = None
    output_format: str | None = None

    def __post_init__(self):
        if self.log_dir is None:
            self.log_dir = os.getenv("CUBED_LOG_DIR") or None
        if self.verbose is None:
            self.verbose = _flag(os.getenv("CUBED_VERBOSE"))
        if self.scan_bound is None:
            self.scan_bound = int(os.getenv("CUBED_SCAN_BOUND", DEFAULT_SCAN_BOUND))
        if self.max_rewrite_steps is None:
            self.max_rewrite_steps = int(os.getenv("CUBED_MAX_REWRITE_STEPS", DEFAULT_MAX_REWRITE_STEPS))
        if self.output_format is None:
            self.output_format = os.getenv("CUBED_FORMAT", "text")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format: {self.output_format}. Supported: {list(OUTPUT_FORMATS)}")
