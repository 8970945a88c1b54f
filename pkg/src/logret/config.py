"""Run configuration: JSON file loading, defaults and override precedence.

Precedence, lowest to highest: built-in defaults, config file, the
``--paper`` preset, explicit command-line flags.  The default seed comes
from ``LOGRET_SEED`` when set.  A workload without its own ``seed`` uses
the run seed.

File layout (every key optional)::

    {
      "seed": 0,
      "workload": {"horizon_days": 90, "daily_min_entries": 100000, ...},
      "ingest": {"format": "daily-csv", "path": "volumes.csv", "epoch": null, "strict": false},
      "windows": [7, 14, 30, 90],
      "baseline_window": 90,
      "distribution": "table2" | [{"age_lo": 0, "age_hi": 7, "probability": 0.8}, ...],
      "query_count": 10000,
      "query_span_days": 0,
      "pricing": {"usd_per_gb_month": 0.25, "days_per_month": 30},
      "output_format": "table",
      "reference_check": false
    }

``workload`` and ``ingest`` are mutually exclusive.  A relative ingest
path is resolved against the config file's directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from logret.costmodel import PricingModel
from logret.errors import ConfigError
from logret.querysim import AccessDistribution, preset_distribution
from logret.workload import WorkloadSpec

SEED_ENV = "LOGRET_SEED"
OUTPUT_FORMATS = ("table", "csv", "json")
INGEST_FORMATS = ("jsonl", "daily-csv")

# Constant volume: 300k entries/day (midpoint of the 100k-500k range).
REPRO_ENTRIES_PER_DAY = 300_000
REPRO_WINDOWS = (90, 30, 14, 7)


@dataclass(frozen=True)
class IngestSource:
    format: str
    path: str
    epoch: str | None = None
    strict: bool = False

    def __post_init__(self) -> None:
        if self.format not in INGEST_FORMATS:
            raise ConfigError(f"ingest.format must be one of {INGEST_FORMATS}, got {self.format!r}", field="ingest.format")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    workload: WorkloadSpec | None = None
    ingest: IngestSource | None = None
    windows: tuple[int, ...] = (7, 14, 30, 90)
    baseline_window: int = 90
    distribution: str | AccessDistribution = "table2"
    query_count: int = 10_000
    query_span_days: float = 0.0
    pricing: PricingModel = field(default_factory=PricingModel)
    output_format: str = "table"
    reference_check: bool = False

    def __post_init__(self) -> None:
        if self.workload is not None and self.ingest is not None:
            raise ConfigError("'workload' and 'ingest' are mutually exclusive", field="ingest")
        if self.workload is None and self.ingest is None:
            object.__setattr__(self, "workload", WorkloadSpec(seed=self.seed))
        _require_int(self.seed, "seed", lo=0)
        if self.seed >= 2**64:
            raise ConfigError("seed must fit in 64 bits", field="seed")
        windows = tuple(self.windows)
        if not windows:
            raise ConfigError("windows must not be empty", field="windows")
        for w in windows:
            _require_int(w, "windows", lo=1)
        if len(set(windows)) != len(windows):
            raise ConfigError(f"windows contain duplicates: {list(windows)}", field="windows")
        object.__setattr__(self, "windows", windows)
        _require_int(self.baseline_window, "baseline_window", lo=1)
        if self.baseline_window not in windows:
            raise ConfigError(
                f"baseline_window {self.baseline_window} must be one of windows {list(windows)}",
                field="baseline_window",
            )
        _require_int(self.query_count, "query_count", lo=1)
        if isinstance(self.query_span_days, bool) or not isinstance(self.query_span_days, (int, float)) \
                or self.query_span_days < 0:
            raise ConfigError(f"query_span_days must be a non-negative number, got {self.query_span_days!r}",
                              field="query_span_days")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}",
                              field="output_format")
        if isinstance(self.distribution, str):
            self.access_distribution()

    def access_distribution(self) -> AccessDistribution:
        if isinstance(self.distribution, AccessDistribution):
            return self.distribution
        try:
            return preset_distribution(self.distribution)
        except LookupError as exc:
            raise ConfigError(str(exc.args[0]), field="distribution") from None

    def to_dict(self) -> dict[str, Any]:
        """Fully resolved configuration, re-loadable with :func:`config_from_dict`."""
        dist = self.distribution
        return {
            "seed": self.seed,
            "workload": _workload_dict(self.workload) if self.workload is not None else None,
            "ingest": asdict(self.ingest) if self.ingest is not None else None,
            "windows": list(self.windows),
            "baseline_window": self.baseline_window,
            "distribution": dist if isinstance(dist, str) else dist.to_records(),
            "query_count": self.query_count,
            "query_span_days": self.query_span_days,
            "pricing": {"usd_per_gb_month": self.pricing.usd_per_gb_month,
                        "days_per_month": self.pricing.days_per_month},
            "output_format": self.output_format,
            "reference_check": self.reference_check,
        }


def _workload_dict(spec: WorkloadSpec) -> dict[str, Any]:
    out = asdict(spec)
    out["severity_weights"] = list(spec.severity_weights)
    return out


def _require_int(value: Any, name: str, lo: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < lo:
        raise ConfigError(f"{name} must be an integer >= {lo}, got {value!r}", field=name)


_TOP_KEYS = {f.name for f in fields(RunConfig)}


def config_from_dict(data: Mapping[str, Any], base_dir: Path | None = None, seed: int | None = None) -> RunConfig:
    """Build a :class:`RunConfig` from parsed JSON.

    ``seed`` (already resolved from flags/env) replaces the file's top-level
    seed when given.
    """
    if not isinstance(data, Mapping):
        raise ConfigError("config root must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}", field=sorted(unknown)[0])

    kwargs: dict[str, Any] = {k: v for k, v in data.items() if v is not None}
    run_seed = seed if seed is not None else kwargs.get("seed", default_seed())
    kwargs["seed"] = run_seed

    if "workload" in kwargs:
        section = kwargs["workload"]
        if isinstance(section, Mapping):
            section = {"seed": run_seed, **section}
            if isinstance(section.get("severity_weights"), list):
                section["severity_weights"] = tuple(section["severity_weights"])
        kwargs["workload"] = _build(WorkloadSpec, section, "workload")
    if "ingest" in kwargs:
        src = dict(kwargs["ingest"]) if isinstance(kwargs["ingest"], Mapping) else kwargs["ingest"]
        if isinstance(src, dict) and "path" in src and base_dir is not None:
            src["path"] = str((base_dir / src["path"]) if not Path(src["path"]).is_absolute() else src["path"])
        kwargs["ingest"] = _build(IngestSource, src, "ingest")
    if "pricing" in kwargs:
        kwargs["pricing"] = _build(PricingModel, kwargs["pricing"], "pricing")
    if "windows" in kwargs:
        if not isinstance(kwargs["windows"], list):
            raise ConfigError("windows must be a list of integers", field="windows")
        kwargs["windows"] = tuple(kwargs["windows"])
    if "distribution" in kwargs:
        kwargs["distribution"] = parse_distribution(kwargs["distribution"], base_dir)
    return RunConfig(**kwargs)


def _build(cls, data: Any, section: str):
    if not isinstance(data, Mapping):
        raise ConfigError(f"'{section}' must be a JSON object", field=section)
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown keys in '{section}': {sorted(unknown)}", field=f"{section}.{sorted(unknown)[0]}")
    try:
        return cls(**data)
    except ConfigError as exc:
        raise ConfigError(f"{section}: {exc}", field=f"{section}.{exc.field}" if exc.field else section) from exc
    except TypeError as exc:
        raise ConfigError(f"{section}: {exc}", field=section) from exc


def parse_distribution(value: Any, base_dir: Path | None = None) -> str | AccessDistribution:
    """Preset name, ``@path/to/buckets.json``, a bucket list, or ``{"name": .., "buckets": [..]}``."""
    if isinstance(value, AccessDistribution):
        return value
    if isinstance(value, str):
        if value.startswith("@"):
            path = Path(value[1:])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            try:
                loaded = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot load distribution file {path}: {exc}", field="distribution") from exc
            return parse_distribution(loaded if not isinstance(loaded, list) else
                                      {"name": path.stem, "buckets": loaded})
        return value
    if isinstance(value, list):
        return AccessDistribution.from_records(value)
    if isinstance(value, Mapping) and "buckets" in value:
        return AccessDistribution.from_records(value["buckets"], name=str(value.get("name", "custom")))
    raise ConfigError(f"cannot interpret distribution {value!r}", field="distribution")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}", field="seed") from None


def load_config(path: str | Path | None, seed: int | None = None) -> RunConfig:
    if path is None:
        return config_from_dict({}, seed=seed)
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}", field="config") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}", field="config") from exc
    return config_from_dict(data, base_dir=path.parent, seed=seed)


def apply_reproduction_preset(config: RunConfig) -> RunConfig:
    """Constant-volume reproduction setup: table2 access mix, 10k point queries, default pricing."""
    return replace(
        config,
        workload=WorkloadSpec.constant(REPRO_ENTRIES_PER_DAY, seed=config.seed),
        ingest=None,
        windows=REPRO_WINDOWS,
        baseline_window=90,
        distribution="table2",
        query_count=10_000,
        query_span_days=0.0,
        pricing=PricingModel(),
        reference_check=True,
    )
