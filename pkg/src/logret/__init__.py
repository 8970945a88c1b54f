"""Deterministic log retention cost simulator."""

__version__ = "0.1.0"

from logret.costmodel import CostReport, PricingModel, daily_rate, storage_cost
from logret.errors import (
    ConfigError,
    EmptyInputError,
    FormatError,
    LogretError,
    ParseError,
    UndefinedRatioError,
)
from logret.metrics import ScenarioReport, ScenarioRow, cpul, normalized_cpul, scenario_matrix
from logret.querysim import (
    AccessDistribution,
    Bucket,
    Query,
    QueryWorkload,
    analytic_ulr,
    is_satisfied,
    preset_distribution,
    sample_queries,
    ulr,
)
from logret.retention import RetainedSnapshot, RetentionPolicy, relative_retained, retained_volume
from logret.workload import (
    DailyVolumeProfile,
    LogEntry,
    Severity,
    WorkloadSpec,
    generate_entries,
    sample_daily_volumes,
    total_volume,
)

__all__ = [
    "AccessDistribution",
    "Bucket",
    "ConfigError",
    "CostReport",
    "DailyVolumeProfile",
    "EmptyInputError",
    "FormatError",
    "LogEntry",
    "LogretError",
    "ParseError",
    "PricingModel",
    "Query",
    "QueryWorkload",
    "RetainedSnapshot",
    "RetentionPolicy",
    "ScenarioReport",
    "ScenarioRow",
    "Severity",
    "UndefinedRatioError",
    "WorkloadSpec",
    "analytic_ulr",
    "cpul",
    "daily_rate",
    "generate_entries",
    "is_satisfied",
    "normalized_cpul",
    "preset_distribution",
    "relative_retained",
    "retained_volume",
    "sample_daily_volumes",
    "sample_queries",
    "scenario_matrix",
    "storage_cost",
    "total_volume",
    "ulr",
]
