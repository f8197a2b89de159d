from cubed.logger.report_logger import ReportLogger
from cubed.logger.verbose import VerbosePrinter

__all__ = ["ReportLogger", "VerbosePrinter"]
