"""Operational query workloads and the useful-log ratio (ULR).

A query is reduced to the age of the oldest log it needs: ``age_days +
span_days``.  It is satisfied when that age fits inside the retention
window (``<=``, so a 7.0 day old record is still visible to a 7 day window).

Ages are drawn by first picking an age bucket by mass and then a uniform
age inside the half-open bucket ``(lo, hi]``.  :func:`analytic_ulr`
evaluates the same model in closed form and serves as the oracle for the
sampled :func:`ulr`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from logret.errors import ConfigError, UndefinedRatioError
from logret.retention import RetentionPolicy

_QUERY_STREAM = 2


@dataclass(frozen=True)
class Bucket:
    age_lo: float
    age_hi: float
    probability: float


@dataclass(frozen=True)
class AccessDistribution:
    buckets: tuple[Bucket, ...]
    name: str = "custom"

    def __post_init__(self) -> None:
        buckets = tuple(self.buckets)
        object.__setattr__(self, "buckets", buckets)
        if not buckets:
            raise ConfigError("access distribution needs at least one bucket", field="distribution")
        prev_hi = None
        for b in buckets:
            if b.age_lo < 0 or not b.age_hi > b.age_lo:
                raise ConfigError(f"bucket ({b.age_lo}, {b.age_hi}] is empty or negative", field="distribution")
            if not 0.0 <= b.probability <= 1.0:
                raise ConfigError(f"bucket probability {b.probability} outside [0, 1]", field="distribution")
            if prev_hi is not None and b.age_lo < prev_hi:
                raise ConfigError("buckets must be ordered by age and non-overlapping", field="distribution")
            prev_hi = b.age_hi
        total = sum(b.probability for b in buckets)
        if abs(total - 1.0) > 1e-9:
            raise ConfigError(f"bucket probabilities sum to {total!r}, expected 1", field="distribution")

    @classmethod
    def from_records(cls, records: Iterable[Mapping], name: str = "custom") -> AccessDistribution:
        """Build from ``[{"age_lo": .., "age_hi": .., "probability": ..}, ...]``."""
        try:
            buckets = tuple(
                Bucket(float(r["age_lo"]), float(r["age_hi"]), float(r["probability"])) for r in records
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed bucket record: {exc}", field="distribution") from exc
        return cls(buckets, name)

    def to_records(self) -> list[dict]:
        return [{"age_lo": b.age_lo, "age_hi": b.age_hi, "probability": b.probability} for b in self.buckets]

    @property
    def max_age(self) -> float:
        return self.buckets[-1].age_hi

    @property
    def probabilities(self) -> list[float]:
        return [b.probability for b in self.buckets]

    def check_horizon(self, horizon_days: int) -> None:
        if self.max_age > horizon_days:
            raise ConfigError(
                f"distribution {self.name!r} reaches age {self.max_age}, beyond the {horizon_days}-day horizon",
                field="distribution",
            )

    def shifted(self, offset_days: float) -> AccessDistribution:
        """Same masses with every bucket moved ``offset_days`` older."""
        return AccessDistribution(
            tuple(Bucket(b.age_lo + offset_days, b.age_hi + offset_days, b.probability) for b in self.buckets),
            f"{self.name}+{offset_days:g}d",
        )


PRESETS: dict[str, AccessDistribution] = {
    # The open-ended "older than 30 days" share is capped at the 90 day horizon.
    "sre-default": AccessDistribution(
        (Bucket(0, 7, 0.80), Bucket(7, 30, 0.15), Bucket(30, 90, 0.05)),
        "sre-default",
    ),
    # Cumulative masses at 7/14/30/90 days are 0.95/0.97/0.98/1.00.
    "table2": AccessDistribution(
        (Bucket(0, 7, 0.95), Bucket(7, 14, 0.02), Bucket(14, 30, 0.01), Bucket(30, 90, 0.02)),
        "table2",
    ),
}


def preset_distribution(name: str) -> AccessDistribution:
    try:
        return PRESETS[name]
    except KeyError:
        raise LookupError(f"unknown distribution preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class Query:
    age_days: float
    span_days: float = 0.0

    def __post_init__(self) -> None:
        if self.age_days < 0 or self.span_days < 0:
            raise ValueError(f"query ages must be non-negative: {self}")

    @property
    def oldest_required_age(self) -> float:
        return self.age_days + self.span_days


@dataclass(frozen=True, eq=False)
class QueryWorkload:
    """Sampled queries held column-wise; ``queries`` rebuilds the record view."""

    age_days: np.ndarray
    span_days: float
    seed: int
    distribution_name: str

    def __post_init__(self) -> None:
        ages = np.array(self.age_days, dtype=np.float64)
        ages.setflags(write=False)
        object.__setattr__(self, "age_days", ages)

    def __len__(self) -> int:
        return len(self.age_days)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QueryWorkload):
            return NotImplemented
        return (
            self.span_days == other.span_days
            and self.seed == other.seed
            and self.distribution_name == other.distribution_name
            and np.array_equal(self.age_days, other.age_days)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def queries(self) -> tuple[Query, ...]:
        return tuple(Query(a, self.span_days) for a in self.age_days.tolist())

    def __iter__(self) -> Iterator[Query]:
        return iter(self.queries)

    def satisfied_count(self, policy: RetentionPolicy) -> int:
        return int(np.count_nonzero(self.age_days + self.span_days <= policy.window_days))


def sample_queries(dist: AccessDistribution, count: int, seed: int, span_days: float = 0.0) -> QueryWorkload:
    if count < 0:
        raise ValueError(f"query count must be non-negative, got {count}")
    if span_days < 0:
        raise ValueError(f"span_days must be non-negative, got {span_days}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, _QUERY_STREAM])))
    lo = np.array([b.age_lo for b in dist.buckets])
    hi = np.array([b.age_hi for b in dist.buckets])
    cdf = np.cumsum(dist.probabilities)
    cdf[-1] = 1.0
    picks = np.minimum(np.searchsorted(cdf, rng.random(count), side="right"), len(cdf) - 1)
    u = rng.random(count)
    # hi - width*u with u in [0, 1) lands in (lo, hi]
    ages = hi[picks] - (hi[picks] - lo[picks]) * u
    return QueryWorkload(ages, float(span_days), seed, dist.name)


def is_satisfied(q: Query, policy: RetentionPolicy) -> bool:
    return q.oldest_required_age <= policy.window_days


def ulr(workload: QueryWorkload, policy: RetentionPolicy) -> float:
    if len(workload) == 0:
        raise UndefinedRatioError("ULR of an empty query workload is undefined", window_days=policy.window_days)
    return workload.satisfied_count(policy) / len(workload)


def _exact(x: float) -> Fraction:
    # Decimal reading of the float, so 0.95 + 0.02 sums to exactly 97/100.
    return Fraction(repr(float(x)))


def analytic_ulr(dist: AccessDistribution, policy: RetentionPolicy, span_days: float = 0.0) -> float:
    """Expected ULR under uniform-in-bucket ages, evaluated in exact rational arithmetic.

    Each bucket contributes its mass times the share of ``(lo, hi]`` whose
    ages satisfy ``age + span <= window``.
    """
    limit = Fraction(policy.window_days) - _exact(span_days)
    total = Fraction(0)
    for b in dist.buckets:
        lo, hi = _exact(b.age_lo), _exact(b.age_hi)
        covered = min(max(limit - lo, Fraction(0)), hi - lo)
        total += _exact(b.probability) * covered / (hi - lo)
    return float(total)


def binomial_sigma(p: float, n: int) -> float:
    return float(np.sqrt(p * (1.0 - p) / n))


def bucket_occupancy(workload: QueryWorkload, dist: AccessDistribution) -> list[int]:
    """Number of sampled queries falling in each ``(lo, hi]`` bucket."""
    edges = np.array([b.age_hi for b in dist.buckets])
    idx = np.searchsorted(edges, workload.age_days, side="left")
    return np.bincount(idx, minlength=len(edges))[: len(edges)].tolist()


def presets_summary() -> Sequence[tuple[str, AccessDistribution]]:
    return sorted(PRESETS.items())
