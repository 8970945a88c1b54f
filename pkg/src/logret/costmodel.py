"""Storage cost of retained log volume under flat per-GB pricing."""

from __future__ import annotations

from dataclasses import dataclass, replace

from logret.errors import ConfigError, EmptyInputError, UndefinedRatioError
from logret.retention import RetentionPolicy, retained_volume
from logret.workload import DailyVolumeProfile

BYTES_PER_GB = 10**9  # decimal GB, as billed by cloud providers


@dataclass(frozen=True)
class PricingModel:
    usd_per_gb_month: float = 0.25
    days_per_month: float = 30.0

    def __post_init__(self) -> None:
        for name in ("usd_per_gb_month", "days_per_month"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
                raise ConfigError(f"{name} must be strictly positive, got {value!r}", field=f"pricing.{name}")

    @property
    def bytes_per_gb(self) -> int:
        return BYTES_PER_GB

    def to_dict(self) -> dict:
        return {
            "usd_per_gb_month": self.usd_per_gb_month,
            "days_per_month": self.days_per_month,
            "bytes_per_gb": BYTES_PER_GB,
        }


def daily_rate(pricing: PricingModel) -> float:
    """USD per GB-day."""
    return pricing.usd_per_gb_month / pricing.days_per_month


@dataclass(frozen=True)
class CostReport:
    """Cost of one retention window.

    ``steady_state_*`` is what is stored on the last profile day.
    ``accumulated_usd`` sums the daily storage bill over every profile day,
    warm-up included.  ``relative_cost`` is left ``None`` until a caller
    compares against a baseline (see :func:`with_relative_cost`).
    """

    window_days: int
    steady_state_bytes: int
    steady_state_gb: float
    monthly_run_rate_usd: float
    accumulated_usd: float
    relative_cost: float | None = None


def storage_cost(profile: DailyVolumeProfile, policy: RetentionPolicy, pricing: PricingModel) -> CostReport:
    if len(profile) == 0:
        raise EmptyInputError("cannot price an empty volume profile")
    last = len(profile) - 1
    stored = [retained_volume(profile, policy, d).retained_bytes for d in range(len(profile))]
    steady_gb = stored[last] / BYTES_PER_GB
    # Sum bytes first so the result is exactly linear in volume and price.
    accumulated = sum(stored) / BYTES_PER_GB * daily_rate(pricing)
    return CostReport(
        window_days=policy.window_days,
        steady_state_bytes=stored[last],
        steady_state_gb=steady_gb,
        monthly_run_rate_usd=steady_gb * pricing.usd_per_gb_month,
        accumulated_usd=accumulated,
    )


def with_relative_cost(cost: CostReport, baseline: CostReport) -> CostReport:
    if baseline.steady_state_bytes == 0:
        raise UndefinedRatioError(
            f"baseline window {baseline.window_days}d stores no bytes", window_days=cost.window_days
        )
    if cost.steady_state_bytes == baseline.steady_state_bytes:
        rel = 1.0
    else:
        rel = cost.steady_state_bytes / baseline.steady_state_bytes
    return replace(cost, relative_cost=rel)
