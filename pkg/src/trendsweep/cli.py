"""Command-line interface.

Subcommands: ``fetch | snapshot | build | sweep | diagnose | table1``.
Exit codes form a stable scripting contract: 0 success, 2 configuration
error, 3 data error, 4 numerical/domain error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import ConfigError, TrendsweepError
from .ingestion import SeriesSpec, fetch_fred, snapshot_create
from .report import load_effective_config, run_build, run_diagnose, run_sweep, run_table1

__all__ = ["main", "entry_point"]


def parse_year_list(text: str) -> list[int]:
    """Parse ``"1980..1989"`` or ``"1980,1982,1984"`` into a year list."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError("range end before start")
            return list(range(lo_i, hi_i + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise ConfigError(f"config-invalid: bad year list {text!r}: {err}") from err


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--snapshot", help="snapshot directory (default: bundled)")
    parser.add_argument(
        "--offline",
        action="store_true",
        help="forbid network access; reproduction runs never need it",
    )
    parser.add_argument("--config", help="JSON config file overlaying the defaults")
    parser.add_argument("--out", help="output directory (default: reports)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trendsweep",
        description=(
            "Build macro-financial series from a pinned snapshot, fit trends "
            "over sliding sample windows, and diagnose which observations "
            "drive the estimates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fetch = sub.add_parser("fetch", help="fetch one raw FRED series payload")
    _add_common(p_fetch)
    p_fetch.add_argument("--series-id", required=True, help="FRED series id, e.g. DGS10")
    p_fetch.add_argument("--start", help="observation start (YYYY-MM-DD)")
    p_fetch.add_argument("--end", help="observation end (YYYY-MM-DD)")
    p_fetch.add_argument("--api-key", help="FRED API key (default: env FRED_API_KEY)")
    p_fetch.add_argument("--payload-out", help="file for the raw JSON (default: stdout)")

    p_snap = sub.add_parser("snapshot", help="create a pinned snapshot from a spec list")
    _add_common(p_snap)
    p_snap.add_argument(
        "--spec-config",
        required=True,
        help="JSON: {vintage, series: [spec...], bea_mapping: {...}}",
    )
    p_snap.add_argument("--dest", required=True, help="snapshot directory to create")
    p_snap.add_argument("--api-key", help="FRED API key for fred-sourced specs")

    p_build = sub.add_parser("build", help="emit the full report bundle")
    _add_common(p_build)
    p_build.add_argument("--start", type=int, help="trend overlay start year")
    p_build.add_argument("--end", type=int, help="trend overlay end year")

    p_sweep = sub.add_parser("sweep", help="trend sensitivity sweep for one series")
    _add_common(p_sweep)
    p_sweep.add_argument("--series", required=True, help="e.g. real_rate, markup")
    p_sweep.add_argument("--mode", choices=("start", "end"), default="start")
    p_sweep.add_argument("--years", help="swept years, e.g. 1980..1989")
    p_sweep.add_argument("--base", type=int, help="base year for percent changes")
    p_sweep.add_argument("--end-date", help="fixed window endpoint (YYYY-MM-DD)")

    p_diag = sub.add_parser("diagnose", help="volatility and influence diagnostics")
    _add_common(p_diag)
    p_diag.add_argument("--series", required=True)
    p_diag.add_argument("--start-year", type=int)
    p_diag.add_argument("--end-year", type=int)
    p_diag.add_argument("--vol-window", type=float, help="volatility window, years")

    p_table = sub.add_parser("table1", help="long-difference table by end year")
    _add_common(p_table)
    p_table.add_argument("--span", type=int, help="difference span in years")
    p_table.add_argument("--end-years", help="e.g. 2012,2014,2016 or 2012..2022")

    return parser


def _config_from_args(args: argparse.Namespace, extra: dict[str, Any] | None = None) -> dict[str, Any]:
    overrides: dict[str, Any] = {
        "snapshot": args.snapshot,
        "out": args.out,
        "offline": True if args.offline else None,
    }
    overrides.update(extra or {})
    return load_effective_config(args.config, overrides)


def _cmd_fetch(args: argparse.Namespace) -> int:
    if args.offline:
        raise ConfigError("offline-fetch: cannot fetch with --offline set")
    api_key = args.api_key or os.environ.get("FRED_API_KEY", "")
    start = dt.date.fromisoformat(args.start) if args.start else None
    end = dt.date.fromisoformat(args.end) if args.end else None
    payload = fetch_fred(args.series_id, api_key, start, end)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.payload_out:
        Path(args.payload_out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.payload_out}")
    else:
        print(text)
    return 0


def _cmd_snapshot(args: argparse.Namespace) -> int:
    spec_path = Path(args.spec_config)
    if not spec_path.exists():
        raise ConfigError(f"config-missing: {spec_path}")
    try:
        spec_config = json.loads(spec_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ConfigError(f"config-invalid: {spec_path}: {err}") from err
    try:
        specs = [SeriesSpec.from_dict(d) for d in spec_config["series"]]
        vintage = spec_config["vintage"]
    except KeyError as err:
        raise ConfigError(f"config-invalid: spec config lacks {err}") from err
    snapshot = snapshot_create(
        specs,
        args.dest,
        vintage=vintage,
        api_key=args.api_key or os.environ.get("FRED_API_KEY"),
        base_dir=spec_path.parent,
        bea_mapping=spec_config.get("bea_mapping"),
        offline=bool(args.offline),
    )
    print(f"snapshot '{snapshot.vintage}' written to {snapshot.root} "
          f"({len(snapshot.ids)} series)")
    return 0


def _cmd_build(args: argparse.Namespace) -> int:
    config = _config_from_args(
        args,
        {"trend_start_year": args.start, "trend_end_year": args.end},
    )
    bundle = run_build(config)
    for name in sorted(bundle.files):
        print(f"wrote {bundle.files[name]}")
    ok_table = all(c["within_tolerance"] for c in bundle.manifest["table1_check"])
    ok_headline = all(
        c["within_tolerance"] for c in bundle.manifest["headline_check"].values()
    )
    print(f"table1 reference check: {'ok' if ok_table else 'DISCREPANCIES (see manifest)'}")
    print(f"headline reference check: {'ok' if ok_headline else 'DISCREPANCIES (see manifest)'}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    years = parse_year_list(args.years) if args.years else None
    paths = run_sweep(
        config,
        args.series,
        mode="start_sweep" if args.mode == "start" else "end_sweep",
        years=years,
        base_year=args.base,
        fixed_end=args.end_date,
    )
    for path in paths.values():
        print(f"wrote {path}")
    return 0


def _cmd_diagnose(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    paths = run_diagnose(
        config,
        args.series,
        start_year=args.start_year,
        end_year=args.end_year,
        vol_window_years=args.vol_window,
    )
    for path in paths.values():
        print(f"wrote {path}")
    return 0


def _cmd_table1(args: argparse.Namespace) -> int:
    extra: dict[str, Any] = {}
    if args.span is not None:
        extra["table_span_years"] = args.span
    if args.end_years:
        extra["table_end_years"] = parse_year_list(args.end_years)
    config = _config_from_args(args, extra)
    paths = run_table1(config)
    for path in paths.values():
        print(f"wrote {path}")
    return 0


_DISPATCH = {
    "fetch": _cmd_fetch,
    "snapshot": _cmd_snapshot,
    "build": _cmd_build,
    "sweep": _cmd_sweep,
    "diagnose": _cmd_diagnose,
    "table1": _cmd_table1,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI; returns the process exit code instead of raising."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except TrendsweepError as err:
        print(f"error ({args.command}): {err}", file=sys.stderr)
        return err.exit_code


def entry_point() -> None:  # console-script shim
    raise SystemExit(main())
