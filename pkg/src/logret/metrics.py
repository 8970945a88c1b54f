"""Cost per useful log and the cross-window scenario matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from logret.costmodel import CostReport, PricingModel, storage_cost, with_relative_cost
from logret.errors import ConfigError, UndefinedRatioError
from logret.querysim import AccessDistribution, QueryWorkload, sample_queries
from logret.retention import RetentionPolicy
from logret.workload import DailyVolumeProfile

# Published reference values per window: (relative cost, ULR, normalized CPUL),
# as printed (whole percent / two decimals).
REFERENCE_ROWS: dict[int, tuple[float, float, float]] = {
    90: (1.00, 1.00, 1.00),
    30: (0.33, 0.98, 0.34),
    14: (0.16, 0.97, 0.17),
    7: (0.08, 0.95, 0.09),
}
CPUL_REFERENCE_TOLERANCE = 0.015


def cpul(cost: CostReport, satisfied_queries: int) -> float:
    """Monthly storage spend per satisfied query (USD)."""
    if satisfied_queries < 0:
        raise ValueError(f"satisfied_queries must be non-negative, got {satisfied_queries}")
    if satisfied_queries == 0:
        raise UndefinedRatioError(
            f"no query is satisfied under a {cost.window_days}-day window; CPUL is undefined",
            window_days=cost.window_days,
        )
    return cost.monthly_run_rate_usd / satisfied_queries


def normalized_cpul(target: tuple[CostReport, float], baseline: tuple[CostReport, float]) -> float:
    """CPUL of ``target`` divided by CPUL of ``baseline``.

    Equivalent to relative cost over relative ULR; needs non-zero baseline
    cost and ULR and a non-zero target ULR.
    """
    target_cost, target_ulr = target
    base_cost, base_ulr = baseline
    window = target_cost.window_days
    if base_cost.steady_state_bytes == 0:
        raise UndefinedRatioError(f"baseline window {base_cost.window_days}d has zero cost", window_days=window)
    if base_ulr <= 0:
        raise UndefinedRatioError(f"baseline window {base_cost.window_days}d has zero ULR", window_days=window)
    if target_ulr <= 0:
        raise UndefinedRatioError("no query is satisfied", window_days=window)
    relative_cost = target_cost.relative_cost
    if relative_cost is None:
        relative_cost = with_relative_cost(target_cost, base_cost).relative_cost
    if relative_cost == 1.0 and target_ulr == base_ulr:
        return 1.0
    return relative_cost / (target_ulr / base_ulr)


@dataclass(frozen=True)
class ScenarioRow:
    window_days: int
    relative_cost: float
    ulr: float
    cpul_normalized: float
    monthly_run_rate_usd: float
    satisfied_queries: int
    total_queries: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


CSV_COLUMNS = tuple(ScenarioRow.__dataclass_fields__)


@dataclass(frozen=True)
class ScenarioReport:
    rows: tuple[ScenarioRow, ...]
    baseline_window_days: int
    distribution_name: str
    seed: int
    pricing: PricingModel
    notes: tuple[str, ...] = field(default=())

    def row(self, window_days: int) -> ScenarioRow:
        for r in self.rows:
            if r.window_days == window_days:
                return r
        raise KeyError(window_days)

    def column(self, name: str) -> dict[int, float]:
        return {r.window_days: getattr(r, name) for r in self.rows}


def scenario_matrix(
    profile: DailyVolumeProfile,
    windows: Sequence[RetentionPolicy],
    dist: AccessDistribution,
    query_count: int,
    seed: int,
    pricing: PricingModel,
    baseline: RetentionPolicy,
    span_days: float = 0.0,
) -> ScenarioReport:
    """Score every window against one shared query workload.

    Costs are taken on the last profile day.  Rows come back sorted by
    window, longest first.
    """
    if not windows:
        raise ConfigError("at least one retention window is required", field="windows")
    if len(set(windows)) != len(windows):
        raise ConfigError("retention windows must be distinct", field="windows")
    if baseline not in windows:
        raise ConfigError(
            f"baseline window {baseline.window_days} is not among the evaluated windows", field="baseline_window"
        )
    if query_count < 1:
        raise ConfigError(f"query_count must be at least 1, got {query_count}", field="query_count")

    workload = sample_queries(dist, query_count, seed, span_days)
    return score_workload(profile, windows, workload, pricing, baseline)


def score_workload(
    profile: DailyVolumeProfile,
    windows: Sequence[RetentionPolicy],
    workload: QueryWorkload,
    pricing: PricingModel,
    baseline: RetentionPolicy,
) -> ScenarioReport:
    n = len(workload)
    base_cost = storage_cost(profile, baseline, pricing)
    base_ulr = workload.satisfied_count(baseline) / n

    rows = []
    for policy in sorted(windows, reverse=True):
        cost = with_relative_cost(storage_cost(profile, policy, pricing), base_cost)
        satisfied = workload.satisfied_count(policy)
        target_ulr = satisfied / n
        try:
            norm = normalized_cpul((cost, target_ulr), (base_cost, base_ulr))
        except UndefinedRatioError as exc:
            raise UndefinedRatioError(f"window {policy.window_days}d: {exc}", window_days=policy.window_days) from exc
        rows.append(
            ScenarioRow(
                window_days=policy.window_days,
                relative_cost=cost.relative_cost,
                ulr=target_ulr,
                cpul_normalized=norm,
                monthly_run_rate_usd=cost.monthly_run_rate_usd,
                satisfied_queries=satisfied,
                total_queries=n,
            )
        )
    return ScenarioReport(
        rows=tuple(rows),
        baseline_window_days=baseline.window_days,
        distribution_name=workload.distribution_name,
        seed=workload.seed,
        pricing=pricing,
    )


def compare_to_reference(report: ScenarioReport) -> list[str]:
    """Notes for every value that differs from the published tables beyond print rounding.

    Percent columns are printed to whole percent (slack 0.005) and CPUL to
    two decimals (slack 0.005).  CPUL deviations inside the wider
    :data:`CPUL_REFERENCE_TOLERANCE` band are reported as rounding gaps.
    """
    notes = []
    labels = ("relative_cost", "ulr", "cpul_normalized")
    for r in report.rows:
        expected = REFERENCE_ROWS.get(r.window_days)
        if expected is None:
            continue
        for label, ref in zip(labels, expected):
            got = getattr(r, label)
            delta = got - ref
            if abs(delta) <= 0.005 + 1e-12:
                continue
            verdict = "outside tolerance"
            if label == "cpul_normalized" and abs(delta) <= CPUL_REFERENCE_TOLERANCE:
                verdict = f"rounding gap, within +/-{CPUL_REFERENCE_TOLERANCE}"
            notes.append(f"{r.window_days}d {label}: got {got:.4f}, reference {ref:.2f} (delta {delta:+.4f}; {verdict})")
    return notes
