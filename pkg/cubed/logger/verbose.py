"""
Verbose printing for cubed using rich.

Everything goes to stderr so that the report on stdout stays byte-stable.
"""

import sys
from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.rule import Rule
from rich.style import Style
from rich.table import Table
from rich.text import Text

from cubed.core.types import CheckResult, Report

COLORS = {
    "primary": "#7AA2F7",  # headers, titles
    "secondary": "#BB9AF7",
    "success": "#9ECE6A",  # PASS
    "warning": "#E0AF68",  # PARTIAL
    "error": "#F7768E",  # FAIL
    "text": "#A9B1D6",
    "muted": "#565F89",
    "accent": "#7DCFFF",
    "border": "#3B4261",
}

STYLE_PRIMARY = Style(color=COLORS["primary"], bold=True)
STYLE_SECONDARY = Style(color=COLORS["secondary"])
STYLE_TEXT = Style(color=COLORS["text"])
STYLE_MUTED = Style(color=COLORS["muted"])
STYLE_ACCENT = Style(color=COLORS["accent"], bold=True)

VERDICT_STYLES = {
    "PASS": Style(color=COLORS["success"], bold=True),
    "FAIL": Style(color=COLORS["error"], bold=True),
    "PARTIAL": Style(color=COLORS["warning"], bold=True),
}


def _to_str(value: Any) -> str:
    if isinstance(value, str):
        return value
    return str(value)


class VerbosePrinter:
    """
    Rich console printer for cubed verbose output: a header panel, one table row
    per check, the reduction trace as rule lines, and the final verdict.
    """

    def __init__(self, enabled: bool = True):
        """
        Args:
            enabled: Whether verbose printing is enabled. If False, all methods are no-ops.
        """
        self.enabled = enabled
        self.console = Console(file=sys.stderr) if enabled else None

    def print_header(self, command: str, source: str, input_digest: str, **settings: Any) -> None:
        if not self.enabled:
            return

        title = Text()
        title.append("◆ ", style=STYLE_ACCENT)
        title.append("cubed", style=STYLE_PRIMARY)
        title.append(f" ━ {command}", style=STYLE_MUTED)

        table = Table(show_header=False, show_edge=False, box=None, padding=(0, 2), expand=True)
        table.add_column("key", style=STYLE_MUTED, width=16)
        table.add_column("value", style=STYLE_TEXT)
        table.add_row("Input", Text(source, style=STYLE_SECONDARY))
        table.add_row("sha256", Text(input_digest[:16], style=STYLE_MUTED))
        for key, value in sorted(settings.items()):
            table.add_row(key, Text(_to_str(value), style=STYLE_ACCENT))

        self.console.print()
        self.console.print(
            Panel(table, title=title, title_align="left", border_style=COLORS["border"], padding=(1, 2))
        )

    def print_checks(self, checks: list[CheckResult]) -> None:
        if not self.enabled:
            return

        table = Table(show_edge=False, box=None, padding=(0, 2))
        table.add_column("check", style=STYLE_TEXT)
        table.add_column("verdict")
        table.add_column("where", style=STYLE_MUTED)
        for check in checks:
            where = check.locations[0] if check.locations else ""
            if len(check.locations) > 1:
                where += f" (+{len(check.locations) - 1} more)"
            table.add_row(check.name, Text(check.verdict, style=VERDICT_STYLES[check.verdict]), where)
        self.console.print(table)

    def print_trace(self, lines: list[str]) -> None:
        if not self.enabled:
            return

        self.console.print(Rule(Text(" Reduction ", style=STYLE_PRIMARY), style=COLORS["border"], characters="─"))
        for line in lines:
            self.console.print(Text(line, style=STYLE_TEXT))

    def print_verdict(self, report: Report) -> None:
        if not self.enabled:
            return

        text = Text()
        text.append(report.verdict, style=VERDICT_STYLES[report.verdict])
        if report.certificate:
            text.append(f"  {report.certificate}", style=STYLE_TEXT)
        self.console.print(Rule(style=COLORS["border"], characters="═"))
        self.console.print(text, justify="center")
        self.console.print(Rule(style=COLORS["border"], characters="═"))

    def print_error(self, message: str) -> None:
        if not self.enabled:
            return
        self.console.print(
            Panel(Text(message, style=STYLE_TEXT), title="input error", border_style=COLORS["error"])
        )
