"""Render a :class:`~logret.metrics.ScenarioReport` as a table, CSV or JSON.

Machine formats carry full precision; floats are written with ``repr``
(shortest round-trip decimal), so output bytes do not depend on platform.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from logret import __version__
from logret.metrics import CSV_COLUMNS, ScenarioReport


def report_to_dict(report: ScenarioReport, config_echo: dict[str, Any] | None = None) -> dict[str, Any]:
    return {
        "generated_by_version": __version__,
        "config_echo": config_echo if config_echo is not None else {},
        "baseline_window_days": report.baseline_window_days,
        "distribution_name": report.distribution_name,
        "seed": report.seed,
        "pricing": report.pricing.to_dict(),
        "rows": [r.to_dict() for r in report.rows],
        "notes": list(report.notes),
    }


def render_json(report: ScenarioReport, config_echo: dict[str, Any] | None = None) -> str:
    return json.dumps(report_to_dict(report, config_echo), indent=2, allow_nan=False) + "\n"


def render_csv(report: ScenarioReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in (getattr(r, c) for c in CSV_COLUMNS)])
    return buf.getvalue()


def _pct(x: float) -> str:
    return f"{x * 100:.0f}%"


def render_table(report: ScenarioReport) -> str:
    header = ("Retention Window", "Relative Cost", "Cost Reduction", "ULR", "CPUL (Normalized)",
              "Monthly USD", "Satisfied Queries")
    body = []
    for r in report.rows:
        baseline = r.window_days == report.baseline_window_days
        body.append((
            f"{r.window_days} days",
            _pct(r.relative_cost) + (" (baseline)" if baseline else ""),
            "-" if baseline else _pct(1.0 - r.relative_cost),
            _pct(r.ulr),
            f"{r.cpul_normalized:.2f}",
            f"{r.monthly_run_rate_usd:.4f}",
            f"{r.satisfied_queries}/{r.total_queries}",
        ))
    widths = [max(len(h), *(len(row[i]) for row in body)) for i, h in enumerate(header)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in body]
    lines.append("")
    lines.append(
        f"distribution={report.distribution_name} seed={report.seed} baseline={report.baseline_window_days}d "
        f"price={report.pricing.usd_per_gb_month!r} USD/GB-month ({report.pricing.days_per_month!r} d/month)"
    )
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def emit_report(report: ScenarioReport, fmt: str, config_echo: dict[str, Any] | None = None) -> bytes:
    if fmt == "table":
        text = render_table(report)
    elif fmt == "csv":
        text = render_csv(report)
    elif fmt == "json":
        text = render_json(report, config_echo)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return text.encode("utf-8")
