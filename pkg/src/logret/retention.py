"""Retention windows applied to a daily volume profile.

Retention is day granular: on ``as_of_day`` a window of R days keeps days
``as_of_day - R + 1 .. as_of_day``.
"""

from __future__ import annotations

from dataclasses import dataclass

from logret.errors import ConfigError, UndefinedRatioError
from logret.workload import DailyVolumeProfile

CANONICAL_WINDOWS = (7, 14, 30, 90)


@dataclass(frozen=True, order=True)
class RetentionPolicy:
    window_days: int

    def __post_init__(self) -> None:
        if isinstance(self.window_days, bool) or not isinstance(self.window_days, int) or self.window_days < 1:
            raise ConfigError(f"retention window must be a positive integer, got {self.window_days!r}", field="windows")


@dataclass(frozen=True)
class RetainedSnapshot:
    as_of_day: int
    window_days: int
    retained_entries: int
    retained_bytes: int


def _check_day(profile: DailyVolumeProfile, as_of_day: int) -> None:
    if not 0 <= as_of_day < len(profile):
        raise IndexError(f"as_of_day {as_of_day} outside profile days [0, {len(profile)})")


def retained_volume(profile: DailyVolumeProfile, policy: RetentionPolicy, as_of_day: int) -> RetainedSnapshot:
    _check_day(profile, as_of_day)
    entries, nbytes = profile.range_sum(as_of_day - policy.window_days + 1, as_of_day)
    return RetainedSnapshot(as_of_day, policy.window_days, entries, nbytes)


def relative_retained(
    profile: DailyVolumeProfile,
    policy: RetentionPolicy,
    baseline: RetentionPolicy,
    as_of_day: int,
) -> float:
    """Retained bytes under ``policy`` as a fraction of those under ``baseline``.

    A baseline shorter than the policy gives a ratio above one; that is allowed.
    """
    target = retained_volume(profile, policy, as_of_day).retained_bytes
    base = retained_volume(profile, baseline, as_of_day).retained_bytes
    if base == 0:
        raise UndefinedRatioError(
            f"baseline window {baseline.window_days}d retains no bytes on day {as_of_day}",
            window_days=policy.window_days,
        )
    if target == base:
        return 1.0
    return target / base
