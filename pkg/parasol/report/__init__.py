"""Report models and rendering. The runner lives in parasol.report.runner."""

from parasol.report.models import CheckReport, CheckStatus, PointRecord, RunOptions
from parasol.report.render import encode_json, format_float, render_report

__all__ = [
    "CheckReport",
    "CheckStatus",
    "PointRecord",
    "RunOptions",
    "encode_json",
    "format_float",
    "render_report",
]
