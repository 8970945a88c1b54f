"""``logret`` command-line interface.

Exit codes: 0 success, 1 runtime failure (I/O, parse, undefined ratio),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from logret import __version__
from logret.config import (
    OUTPUT_FORMATS,
    RunConfig,
    apply_reproduction_preset,
    load_config,
    parse_distribution,
)
from logret.costmodel import PricingModel
from logret.errors import ConfigError, LogretError
from logret.ingest import parse_daily_csv, parse_entry_lines, write_daily_csv, write_entries_jsonl
from logret.metrics import ScenarioReport, compare_to_reference, scenario_matrix
from logret.querysim import PRESETS, analytic_ulr
from logret.report import emit_report
from logret.retention import CANONICAL_WINDOWS, RetentionPolicy
from logret.workload import DailyVolumeProfile, generate_entries, sample_daily_volumes, total_volume

logger = logging.getLogger("logret")


def build_profile(config: RunConfig) -> DailyVolumeProfile:
    if config.ingest is None:
        return sample_daily_volumes(config.workload)
    src = config.ingest
    with open(src.path, "rb") as fh:
        if src.format == "jsonl":
            profile, report = parse_entry_lines(fh, src.epoch, strict=src.strict, source_path=src.path)
        else:
            profile, report = parse_daily_csv(fh, strict=src.strict, source_path=src.path)
    if report.records_rejected:
        logger.warning("%s: %d records rejected", src.path, report.records_rejected)
    return profile


def run_scenario(config: RunConfig) -> tuple[ScenarioReport, bytes]:
    """Build or load the profile, score every window and render the report."""
    profile = build_profile(config)
    dist = config.access_distribution()
    dist.check_horizon(len(profile))
    report = scenario_matrix(
        profile,
        [RetentionPolicy(w) for w in config.windows],
        dist,
        config.query_count,
        config.seed,
        config.pricing,
        RetentionPolicy(config.baseline_window),
        span_days=config.query_span_days,
    )
    if config.reference_check:
        report = replace(report, notes=tuple(compare_to_reference(report)))
    return report, emit_report(report, config.output_format, config.to_dict())


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def resolve_run_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config, seed=args.seed)
    if args.paper:
        config = apply_reproduction_preset(config)
    overrides = {}
    if args.windows is not None:
        overrides["windows"] = args.windows
    if args.baseline is not None:
        overrides["baseline_window"] = args.baseline
    if args.dist is not None:
        overrides["distribution"] = parse_distribution(args.dist)
    if args.queries is not None:
        overrides["query_count"] = args.queries
    if args.span is not None:
        overrides["query_span_days"] = args.span
    if args.price_per_gb_month is not None or args.days_per_month is not None:
        overrides["pricing"] = PricingModel(
            args.price_per_gb_month if args.price_per_gb_month is not None else config.pricing.usd_per_gb_month,
            args.days_per_month if args.days_per_month is not None else config.pricing.days_per_month,
        )
    if args.format is not None:
        overrides["output_format"] = args.format
    return replace(config, **overrides) if overrides else config


def cmd_run(args: argparse.Namespace) -> int:
    config = resolve_run_config(args)
    _, rendered = run_scenario(config)
    sys.stdout.buffer.write(rendered)
    sys.stdout.flush()
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    config = load_config(args.config, seed=args.seed)
    if args.paper:
        config = apply_reproduction_preset(config)
    if config.workload is None:
        raise ConfigError("gen needs a synthetic 'workload' section, not an ingest source", field="workload")
    spec = config.workload
    profile = sample_daily_volumes(spec)
    with open(args.out_profile, "w", newline="") as fh:
        write_daily_csv(profile, fh)
    entries, nbytes = total_volume(profile)
    summary = {"out_profile": str(args.out_profile), "days": len(profile), "entries": entries, "bytes": nbytes}
    if args.out_entries is not None:
        if not 0 <= args.day < spec.horizon_days:
            raise ConfigError(f"--day {args.day} outside horizon [0, {spec.horizon_days})", field="day")
        count = profile.entry_counts[args.day]
        with open(args.out_entries, "w") as fh:
            written = write_entries_jsonl(generate_entries(spec, args.day, count), fh)
        summary.update(out_entries=str(args.out_entries), day=args.day, entries_written=written)
    print(json.dumps(summary, indent=2))
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    path = str(args.input)
    with open(path, "rb") as fh:
        if args.format == "jsonl":
            profile, report = parse_entry_lines(fh, args.epoch, strict=args.strict, source_path=path)
        else:
            if args.epoch is not None:
                raise ConfigError("--epoch applies to jsonl input only", field="epoch")
            profile, report = parse_daily_csv(fh, strict=args.strict, source_path=path)
    if args.out_profile is not None:
        with open(args.out_profile, "w", newline="") as fh:
            write_daily_csv(profile, fh)
    entries, nbytes = total_volume(profile) if len(profile) else (0, 0)
    summary = report.to_dict()
    summary.update(days=len(profile), total_entries=entries, total_bytes=nbytes)
    print(json.dumps(summary, indent=2))
    return 0


def cmd_presets(args: argparse.Namespace) -> int:
    for name, dist in sorted(PRESETS.items()):
        buckets = ", ".join(f"({b.age_lo:g},{b.age_hi:g}]:{b.probability:g}" for b in dist.buckets)
        ulrs = ", ".join(
            f"{w}d={analytic_ulr(dist, RetentionPolicy(w)):.5g}" for w in CANONICAL_WINDOWS
        )
        print(f"{name}: {buckets}")
        print(f"  expected ULR: {ulrs}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logret", description="Log retention cost and usefulness simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="score retention windows and print the scenario report")
    run.add_argument("--config", type=Path)
    run.add_argument("--seed", type=int, help="run seed (default: $LOGRET_SEED, then 0)")
    run.add_argument("--windows", type=_int_list, help="comma-separated windows in days, e.g. 7,14,30,90")
    run.add_argument("--baseline", type=int)
    run.add_argument("--dist", help="table2 | sre-default | @buckets.json")
    run.add_argument("--queries", type=int)
    run.add_argument("--span", type=float, help="extra lookback days per query")
    run.add_argument("--price-per-gb-month", type=float)
    run.add_argument("--days-per-month", type=float)
    run.add_argument("--format", choices=OUTPUT_FORMATS)
    run.add_argument("--paper", action="store_true", help="constant-volume reproduction preset")
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="write a synthetic daily profile (and optionally one day of entries)")
    gen.add_argument("--config", type=Path)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--paper", action="store_true")
    gen.add_argument("--out-profile", type=Path, required=True)
    gen.add_argument("--out-entries", type=Path)
    gen.add_argument("--day", type=int, default=0)
    gen.set_defaults(func=cmd_gen)

    ing = sub.add_parser("ingest", help="parse real volume data and summarize it")
    ing.add_argument("--format", choices=("jsonl", "daily-csv"), required=True)
    ing.add_argument("--in", dest="input", type=Path, required=True)
    ing.add_argument("--epoch", help="ISO-8601 day-0 start (default: midnight UTC of the earliest record)")
    ing.add_argument("--strict", action="store_true", help="abort on the first malformed record")
    ing.add_argument("--out-profile", type=Path)
    ing.set_defaults(func=cmd_ingest)

    presets = sub.add_parser("presets", help="list built-in access distributions")
    presets.set_defaults(func=cmd_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        field = f" [{exc.field}]" if exc.field else ""
        print(f"logret: config error{field}: {exc}", file=sys.stderr)
        return 2
    except (LogretError, OSError, IndexError) as exc:
        print(f"logret: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
