"""Synthetic log workloads.

Volumes are generated per day from an independent random stream keyed by
``(seed, day_index, stream)``.  The bit generator is Philox (counter based),
seeded through :class:`numpy.random.SeedSequence`, so every day can be
generated alone, in any order, or in parallel and still yield the same
numbers.  Changing the generator family changes every output; treat it as
part of the file format.

All cost metrics only need the per-day aggregates in
:class:`DailyVolumeProfile`.  :func:`generate_entries` materializes single
log records for format round-trips and demos.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from logret.errors import ConfigError

SECONDS_PER_DAY = 86_400
TOKEN_HEX_CHARS = 16

# Stream tags keep the volume draw and the entry draw for the same day independent.
_VOLUME_STREAM = 0
_ENTRY_STREAM = 1


class Severity(str, enum.Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARN = "WARN"
    ERROR = "ERROR"


SEVERITIES: tuple[Severity, ...] = tuple(Severity)


def day_rng(seed: int, day_index: int, stream: int) -> np.random.Generator:
    """Independent generator for one (seed, day, stream) triple."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, day_index, stream])))


@dataclass(frozen=True)
class WorkloadSpec:
    """Parameters of a synthetic workload.

    The entry-count range and horizon default to a 90 day stream varying
    between 100k and 500k entries per day.  Entry size and the
    severity/service mix are configuration, not measured values.
    """

    horizon_days: int = 90
    daily_min_entries: int = 100_000
    daily_max_entries: int = 500_000
    mean_entry_bytes: int = 150
    entry_size_jitter_fraction: float = 0.2
    severity_weights: tuple[float, float, float, float] = (0.15, 0.70, 0.10, 0.05)
    service_count: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "severity_weights", tuple(float(w) for w in self.severity_weights))
        for name in ("horizon_days", "daily_min_entries", "daily_max_entries", "mean_entry_bytes", "service_count"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}", field=name)
        if self.daily_min_entries > self.daily_max_entries:
            raise ConfigError(
                f"daily_min_entries ({self.daily_min_entries}) exceeds daily_max_entries ({self.daily_max_entries})",
                field="daily_min_entries",
            )
        if not 0.0 <= self.entry_size_jitter_fraction < 1.0:
            raise ConfigError(
                f"entry_size_jitter_fraction must lie in [0, 1), got {self.entry_size_jitter_fraction!r}",
                field="entry_size_jitter_fraction",
            )
        weights = self.severity_weights
        if len(weights) != len(SEVERITIES) or any(w < 0 for w in weights):
            raise ConfigError(
                f"severity_weights needs {len(SEVERITIES)} non-negative weights for {[s.value for s in SEVERITIES]}",
                field="severity_weights",
            )
        if abs(sum(weights) - 1.0) > 1e-9:
            raise ConfigError(f"severity_weights sum to {sum(weights)!r}, expected 1", field="severity_weights")
        if isinstance(self.seed, bool) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}", field="seed")

    @classmethod
    def constant(cls, entries_per_day: int, **kwargs) -> WorkloadSpec:
        """Fixed daily volume with no size jitter; every day stores the same number of bytes."""
        kwargs.setdefault("entry_size_jitter_fraction", 0.0)
        return cls(daily_min_entries=entries_per_day, daily_max_entries=entries_per_day, **kwargs)


class DayVolume(NamedTuple):
    day_index: int
    entry_count: int
    total_bytes: int


@dataclass(frozen=True)
class DailyVolumeProfile:
    """Per-day entry counts and byte totals, day indices 0..n-1."""

    entry_counts: tuple[int, ...]
    byte_totals: tuple[int, ...]
    _prefix_entries: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _prefix_bytes: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.entry_counts)
        totals = tuple(int(b) for b in self.byte_totals)
        if len(counts) != len(totals):
            raise ValueError("entry_counts and byte_totals differ in length")
        for day, (c, b) in enumerate(zip(counts, totals)):
            if c < 0 or b < 0:
                raise ValueError(f"day {day}: negative volume ({c} entries, {b} bytes)")
            if (c == 0) != (b == 0):
                raise ValueError(f"day {day}: entry_count and total_bytes must be zero together ({c}, {b})")
        object.__setattr__(self, "entry_counts", counts)
        object.__setattr__(self, "byte_totals", totals)
        object.__setattr__(self, "_prefix_entries", _prefix(counts))
        object.__setattr__(self, "_prefix_bytes", _prefix(totals))

    @classmethod
    def from_days(cls, days: Sequence[tuple[int, int, int]]) -> DailyVolumeProfile:
        days = sorted(days)
        if [d[0] for d in days] != list(range(len(days))):
            raise ValueError("day indices must be contiguous from 0")
        return cls(tuple(d[1] for d in days), tuple(d[2] for d in days))

    @property
    def days(self) -> tuple[DayVolume, ...]:
        return tuple(DayVolume(i, c, b) for i, (c, b) in enumerate(zip(self.entry_counts, self.byte_totals)))

    def __len__(self) -> int:
        return len(self.entry_counts)

    def range_sum(self, first_day: int, last_day: int) -> tuple[int, int]:
        """(entries, bytes) summed over the inclusive day range, clipped to the profile."""
        lo = max(first_day, 0)
        hi = min(last_day, len(self) - 1)
        if hi < lo:
            return 0, 0
        return (
            self._prefix_entries[hi + 1] - self._prefix_entries[lo],
            self._prefix_bytes[hi + 1] - self._prefix_bytes[lo],
        )

    def scaled_bytes(self, factor: int) -> DailyVolumeProfile:
        return DailyVolumeProfile(self.entry_counts, tuple(b * factor for b in self.byte_totals))

    def merge(self, other: DailyVolumeProfile) -> DailyVolumeProfile:
        """Day-wise sum of two profiles; the shorter one is zero-padded."""
        n = max(len(self), len(other))
        pad = lambda xs: xs + (0,) * (n - len(xs))  # noqa: E731
        return DailyVolumeProfile(
            tuple(a + b for a, b in zip(pad(self.entry_counts), pad(other.entry_counts))),
            tuple(a + b for a, b in zip(pad(self.byte_totals), pad(other.byte_totals))),
        )


def _prefix(values: tuple[int, ...]) -> tuple[int, ...]:
    out = [0]
    for v in values:
        out.append(out[-1] + v)
    return tuple(out)


def sample_day_volume(spec: WorkloadSpec, day_index: int) -> DayVolume:
    """Entry count and byte total for a single day, independent of every other day."""
    rng = day_rng(spec.seed, day_index, _VOLUME_STREAM)
    count = int(rng.integers(spec.daily_min_entries, spec.daily_max_entries, endpoint=True))
    jitter = spec.entry_size_jitter_fraction
    factor = rng.uniform(1.0 - jitter, 1.0 + jitter) if jitter > 0 else 1.0
    total = max(int(round(count * spec.mean_entry_bytes * factor)), 1)
    return DayVolume(day_index, count, total)


def sample_daily_volumes(spec: WorkloadSpec) -> DailyVolumeProfile:
    return DailyVolumeProfile.from_days([sample_day_volume(spec, d) for d in range(spec.horizon_days)])


def total_volume(profile: DailyVolumeProfile) -> tuple[int, int]:
    """Total (entries, bytes) over the whole profile."""
    return profile.range_sum(0, len(profile) - 1)


@dataclass(frozen=True, slots=True)
class LogEntry:
    timestamp: int
    severity: Severity
    service_id: int
    metadata_token: str
    size_bytes: int

    def to_record(self) -> dict:
        """JSON-lines record in the ingest format."""
        return {
            "ts": self.timestamp,
            "size_bytes": self.size_bytes,
            "severity": self.severity.value,
            "service": f"svc-{self.service_id}",
            "token": self.metadata_token,
        }


def metadata_token(seed: int, day_index: int, ordinal: int) -> str:
    digest = hashlib.blake2b(f"{seed}:{day_index}:{ordinal}".encode(), digest_size=TOKEN_HEX_CHARS // 2)
    return digest.hexdigest()


def generate_entries(spec: WorkloadSpec, day_index: int, target_count: int) -> Iterator[LogEntry]:
    """Materialize ``target_count`` entries for one day, ordered by timestamp.

    Timestamps are whole seconds since the simulation epoch, drawn uniformly
    within the day and sorted.  Raises IndexError if ``day_index`` lies
    outside the horizon.
    """
    if not 0 <= day_index < spec.horizon_days:
        raise IndexError(f"day_index {day_index} outside horizon [0, {spec.horizon_days})")
    if target_count < 0:
        raise ValueError(f"target_count must be non-negative, got {target_count}")
    return _entries(spec, day_index, target_count)


def _entries(spec: WorkloadSpec, day_index: int, n: int) -> Iterator[LogEntry]:
    rng = day_rng(spec.seed, day_index, _ENTRY_STREAM)
    offsets = np.sort(rng.integers(0, SECONDS_PER_DAY, size=n))
    severity_idx = rng.choice(len(SEVERITIES), size=n, p=np.asarray(spec.severity_weights))
    services = rng.integers(0, spec.service_count, size=n)
    jitter = spec.entry_size_jitter_fraction
    factors = rng.uniform(1.0 - jitter, 1.0 + jitter, size=n) if jitter > 0 else np.ones(n)
    sizes = np.maximum(np.rint(spec.mean_entry_bytes * factors).astype(np.int64), 1)

    base = day_index * SECONDS_PER_DAY
    for i, (off, sev, svc, size) in enumerate(
        zip(offsets.tolist(), severity_idx.tolist(), services.tolist(), sizes.tolist())
    ):
        yield LogEntry(base + off, SEVERITIES[sev], svc, metadata_token(spec.seed, day_index, i), size)
