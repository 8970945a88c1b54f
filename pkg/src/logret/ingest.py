"""Load real volume data into a :class:`DailyVolumeProfile`.

Two inputs are understood:

* JSON lines, one log record per line::

      {"ts": "2024-05-01T12:00:00Z" | 1714564800, "size_bytes": 312,
       "severity": "INFO", "service": "api"}

* daily aggregates as CSV with the exact header ``day,entries,bytes``,
  where ``day`` is a 0-based index or an ISO date.

Days are UTC, half-open ``[epoch + k*86400, epoch + (k+1)*86400)``.  Gaps
between the first and last day are zero-filled.  Bad records are counted
and skipped unless ``strict`` is set.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from typing import IO, Iterable

from logret.errors import FormatError, ParseError
from logret.workload import SECONDS_PER_DAY, DailyVolumeProfile

MAX_REJECTION_SAMPLES = 10
CSV_HEADER = ("day", "entries", "bytes")


@dataclass
class IngestReport:
    source_path: str
    records_read: int = 0
    records_rejected: int = 0
    first_day: int | None = None
    last_day: int | None = None
    rejection_samples: list[tuple[int, str]] = field(default_factory=list)

    def reject(self, line_number: int, reason: str, strict: bool) -> None:
        if strict:
            raise ParseError(reason, line_number)
        self.records_rejected += 1
        if len(self.rejection_samples) < MAX_REJECTION_SAMPLES:
            self.rejection_samples.append((line_number, reason))

    def to_dict(self) -> dict:
        return {
            "source_path": self.source_path,
            "records_read": self.records_read,
            "records_rejected": self.records_rejected,
            "first_day": self.first_day,
            "last_day": self.last_day,
            "rejection_samples": [list(s) for s in self.rejection_samples],
        }


def parse_timestamp(value: object) -> int:
    """Epoch seconds (UTC) from an integer or an ISO-8601 string; naive strings are read as UTC."""
    if isinstance(value, bool):
        raise ValueError("boolean is not a timestamp")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and math.isfinite(value):
        return math.floor(value)
    if isinstance(value, str):
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        dt = datetime.fromisoformat(text)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return math.floor(dt.timestamp())
    raise ValueError(f"unsupported timestamp {value!r}")


def _lines(source: IO[bytes] | IO[str] | Iterable) -> Iterable[str]:
    for raw in source:
        yield raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw


def _check_record(record: object) -> tuple[int, int]:
    if not isinstance(record, dict):
        raise ValueError("record is not a JSON object")
    if "ts" not in record:
        raise ValueError("missing field 'ts'")
    if "size_bytes" not in record:
        raise ValueError("missing field 'size_bytes'")
    size = record["size_bytes"]
    if isinstance(size, bool) or not isinstance(size, int) or size < 1:
        raise ValueError(f"size_bytes must be a positive integer, got {size!r}")
    for key in ("severity", "service"):
        if key in record and not isinstance(record[key], str):
            raise ValueError(f"{key} must be a string")
    return parse_timestamp(record["ts"]), size


def parse_entry_lines(
    source: IO[bytes] | IO[str] | Iterable,
    epoch: int | str | datetime | None = None,
    *,
    strict: bool = False,
    source_path: str = "<stream>",
) -> tuple[DailyVolumeProfile, IngestReport]:
    """Bucket JSON-lines log records into days relative to ``epoch``.

    ``epoch`` defaults to midnight UTC of the earliest accepted timestamp.
    Records before an explicit epoch are rejected.  Blank lines are ignored.
    """
    report = IngestReport(source_path)
    epoch_s = _epoch_seconds(epoch)
    # Without an epoch, bucket by absolute UTC day and rebase afterwards.
    origin = epoch_s if epoch_s is not None else 0
    counts: dict[int, int] = {}
    totals: dict[int, int] = {}

    for line_number, line in enumerate(_lines(source), start=1):
        if not line.strip():
            continue
        try:
            ts, size = _check_record(json.loads(line))
        except (ValueError, OverflowError) as exc:
            # json.JSONDecodeError is a ValueError
            report.reject(line_number, f"{type(exc).__name__}: {exc}", strict)
            continue
        if epoch_s is not None and ts < epoch_s:
            report.reject(line_number, f"timestamp {ts} precedes epoch {epoch_s}", strict)
            continue
        day = (ts - origin) // SECONDS_PER_DAY
        counts[day] = counts.get(day, 0) + 1
        totals[day] = totals.get(day, 0) + size
        report.records_read += 1

    if not counts:
        return DailyVolumeProfile((), ()), report
    first = 0 if epoch_s is not None else min(counts)
    last = max(counts)
    profile = DailyVolumeProfile(
        tuple(counts.get(d, 0) for d in range(first, last + 1)),
        tuple(totals.get(d, 0) for d in range(first, last + 1)),
    )
    report.first_day = min(counts) - first
    report.last_day = last - first
    return profile, report


def _epoch_seconds(epoch: int | str | datetime | None) -> int | None:
    if epoch is None:
        return None
    if isinstance(epoch, datetime):
        if epoch.tzinfo is None:
            epoch = epoch.replace(tzinfo=timezone.utc)
        return math.floor(epoch.timestamp())
    try:
        return parse_timestamp(epoch)
    except ValueError as exc:
        raise FormatError(f"invalid epoch {epoch!r}: {exc}") from exc


def _parse_day(text: str) -> int | date:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return date.fromisoformat(text)


def parse_daily_csv(
    source: IO[bytes] | IO[str] | Iterable,
    *,
    strict: bool = False,
    source_path: str = "<stream>",
) -> tuple[DailyVolumeProfile, IngestReport]:
    """Read ``day,entries,bytes`` rows.

    Integer days are used as-is (profile starts at day 0); ISO dates are
    numbered from the earliest date present.  Duplicate days and a wrong
    header raise :class:`FormatError` in every mode.
    """
    report = IngestReport(source_path)
    reader = csv.reader(_lines(source))
    header = next(reader, None)
    if header is not None and header and header[0].startswith("\ufeff"):
        header[0] = header[0][1:]
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        got = "<empty file>" if header is None else ",".join(header)
        raise FormatError(f"expected CSV header {','.join(CSV_HEADER)!r}, got {got!r}")

    rows: dict[int | date, tuple[int, int]] = {}
    line_numbers: dict[int | date, int] = {}
    for line_number, fields in enumerate(reader, start=2):
        if not fields or all(not f.strip() for f in fields):
            continue
        try:
            if len(fields) != 3:
                raise ValueError(f"expected 3 fields, got {len(fields)}")
            day = _parse_day(fields[0])
            entries, nbytes = int(fields[1]), int(fields[2])
            if isinstance(day, int) and day < 0:
                raise ValueError(f"negative day index {day}")
            if entries < 0 or nbytes < 0:
                raise ValueError(f"negative volume ({entries} entries, {nbytes} bytes)")
            if (entries == 0) != (nbytes == 0):
                raise ValueError(f"entries and bytes must be zero together ({entries}, {nbytes})")
        except ValueError as exc:
            report.reject(line_number, str(exc), strict)
            continue
        if day in rows:
            raise FormatError(f"line {line_number}: duplicate day {day} (first seen on line {line_numbers[day]})")
        rows[day] = (entries, nbytes)
        line_numbers[day] = line_number
        report.records_read += 1

    if not rows:
        return DailyVolumeProfile((), ()), report
    kinds = {type(d) for d in rows}
    if len(kinds) > 1:
        raise FormatError("day column mixes integer indices and ISO dates")
    if kinds == {date}:
        start = min(rows)
        indexed = {(d - start).days: v for d, v in rows.items()}
    else:
        indexed = rows
    last = max(indexed)
    profile = DailyVolumeProfile(
        tuple(indexed.get(d, (0, 0))[0] for d in range(last + 1)),
        tuple(indexed.get(d, (0, 0))[1] for d in range(last + 1)),
    )
    report.first_day = min(indexed)
    report.last_day = last
    return profile, report


def write_daily_csv(profile: DailyVolumeProfile, out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for day in profile.days:
        writer.writerow(day)


def daily_csv_text(profile: DailyVolumeProfile) -> str:
    buf = io.StringIO()
    write_daily_csv(profile, buf)
    return buf.getvalue()


def write_entries_jsonl(entries: Iterable, out: IO[str]) -> int:
    """Write :class:`~logret.workload.LogEntry` objects as ingestable JSON lines."""
    n = 0
    for entry in entries:
        out.write(json.dumps(entry.to_record(), separators=(",", ":")))
        out.write("\n")
        n += 1
    return n
