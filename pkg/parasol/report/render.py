"""Text table and JSON rendering of check reports."""

from __future__ import annotations

import json
import math
from enum import Enum
from typing import Any, Iterator, List, Optional, Sequence

from parasol.config import REPORT_CONFIG
from parasol.report.models import CheckReport

RULE_WIDTH = 96


def format_float(value: float) -> str:
    """Shortest-stable JSON text: 17 significant digits, non-finite as null."""
    if not math.isfinite(value):
        return "null"
    text = format(value, f".{REPORT_CONFIG['float_digits']}g")
    if all(ch in "-0123456789" for ch in text):
        text += ".0"
    return text


class ReportEncoder(json.JSONEncoder):
    """json.JSONEncoder that writes floats through format_float."""

    def default(self, o: Any) -> Any:
        if isinstance(o, Enum):
            return o.value
        if hasattr(o, "item"):
            # numpy scalar
            return o.item()
        return super().default(o)

    def iterencode(self, o: Any, _one_shot: bool = False) -> Iterator[str]:
        markers: Optional[dict] = {} if self.check_circular else None
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        indent = " " * self.indent if isinstance(self.indent, int) else self.indent
        iterencode = json.encoder._make_iterencode(
            markers,
            self.default,
            encoder,
            indent,
            format_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return iterencode(o, 0)


def encode_json(value: Any, indent: int = 2) -> str:
    """Deterministic JSON: keys in model field order, floats at full precision."""
    return json.dumps(value, cls=ReportEncoder, indent=indent, ensure_ascii=False)


def render_json(
    reports: Sequence[CheckReport],
    spec_digest: str = "",
    seed: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> str:
    document = {
        "version": REPORT_CONFIG["version"],
        "spec_digest": spec_digest,
        "seed": seed,
        "tolerance": tolerance,
        "checks": [report.model_dump() for report in reports],
    }
    return encode_json(document) + "\n"


def _residual_text(report: CheckReport) -> str:
    if report.max_residual is None:
        return "-"
    return f"{report.max_residual:.3e}"


def render_text(
    reports: Sequence[CheckReport],
    spec_digest: str = "",
    seed: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> str:
    lines: List[str] = ["=" * RULE_WIDTH, "PARASOL CHECK REPORT"]
    provenance = [f"spec {spec_digest}" if spec_digest else ""]
    if seed is not None:
        provenance.append(f"seed {seed}")
    if tolerance is not None:
        provenance.append(f"tolerance {tolerance:g}")
    provenance = [part for part in provenance if part]
    if provenance:
        lines.append("  ".join(provenance))
    lines.append("=" * RULE_WIDTH)
    lines.append(f"{'CHECK':30s} {'STATUS':17s} {'MAX RESIDUAL':>12s} {'POINTS':>6s}  MESSAGE")
    lines.append("-" * RULE_WIDTH)
    failing = 0
    for report in reports:
        failing += int(report.status.fails_run)
        message = report.message.replace("\n", " ")
        lines.append(
            f"{report.check_name:30s} {report.status.value:17s} "
            f"{_residual_text(report):>12s} {report.points_checked:6d}  {message}".rstrip()
        )
    lines.append("-" * RULE_WIDTH)
    lines.append(f"Checks: {len(reports)}  failing: {failing}")
    lines.append("=" * RULE_WIDTH)
    return "\n".join(lines) + "\n"


def render_report(
    reports: Sequence[CheckReport],
    format: str = "text",
    spec_digest: str = "",
    seed: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> str:
    if format == "json":
        return render_json(reports, spec_digest, seed, tolerance)
    if format == "text":
        return render_text(reports, spec_digest, seed, tolerance)
    raise ValueError(f"Unknown report format: {format}")
