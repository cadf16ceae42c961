"""Report bundle builders: figure data, sweep curves, tables, and headlines.

Everything is emitted as plain files so plotting stays out of scope:

* figure data as tidy long CSV (columns ``series,date,value,facet``),
* the long-difference table as a wide CSV,
* headline sensitivity numbers as JSON,
* a run manifest tying every output to the snapshot hash and config hash.

Output bytes are a pure function of (snapshot, effective config): floats are
written with ``repr`` (shortest round-trip), JSON keys are sorted, and no
timestamps or local paths enter the outputs.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping

from . import __version__
from .data import bundled_snapshot_path
from .errors import ConfigError, DataError
from .ingestion import Snapshot, snapshot_load
from .pipeline import build_series_bundle
from .sensitivity import (
    SweepMode,
    SensitivitySweep,
    end_date_sweep,
    long_difference_table,
    start_date_sweep,
    volatility_influence_report,
)
from .series import TimeSeries, Window, resample_annual
from .trend import fit_linear, years_since

__all__ = [
    "DEFAULT_CONFIG",
    "SWEEP_SERIES",
    "REFERENCE_TABLE",
    "REFERENCE_HEADLINE_PCT",
    "ReportBundle",
    "load_effective_config",
    "open_snapshot",
    "run_build",
    "run_sweep",
    "run_diagnose",
    "run_table1",
]

#: Series whose trend sensitivity is swept and reported.
SWEEP_SERIES = ("real_rate", "cost_of_capital", "profit_share", "markup")

DEFAULT_CONFIG: dict[str, Any] = {
    "snapshot": None,  # None -> bundled snapshot
    "out": "reports",
    "offline": False,
    "equity_premium": 5.0,
    "include_production_taxes": True,
    "inflation_growth": "log",
    "annual_how": "mean",
    "trend_start_year": 1984,
    "trend_end_year": 2019,
    "sweep_start_years": list(range(1980, 1990)),
    "sweep_base_year": 1980,
    "sweep_end": "2019-12-31",
    "headline_comparison_year": 1984,
    "table_span_years": 15,
    "table_end_years": [2012, 2014, 2016, 2018, 2020, 2022],
    "vol_window_years": 5.0,
    "diagnose_start_year": 1980,
    "diagnose_end_year": 2022,
}

#: Published reference estimates the bundled snapshot is calibrated against:
#: long differences by (start, end) year, in percent points (the profit
#: share is compared in percent points, i.e. share * 100). The markup column
#: is reported but not checked; the published markup differences mix two
#: scales, so only markup-level units are emitted here.
REFERENCE_TABLE: dict[tuple[int, int], dict[str, float]] = {
    (1997, 2012): {"real_rate": -3.65, "cost_of_capital": -3.62, "profit_share_pp": 7.58},
    (1999, 2014): {"real_rate": -3.95, "cost_of_capital": -4.28, "profit_share_pp": 10.35},
    (2001, 2016): {"real_rate": -2.54, "cost_of_capital": -2.45, "profit_share_pp": 8.40},
    (2003, 2018): {"real_rate": -0.41, "cost_of_capital": -0.61, "profit_share_pp": 2.90},
    (2005, 2020): {"real_rate": -1.78, "cost_of_capital": -1.64, "profit_share_pp": 2.06},
    (2007, 2022): {"real_rate": -2.32, "cost_of_capital": -2.33, "profit_share_pp": 6.64},
}
TABLE_TOLERANCE_PP = 0.5

#: Reference magnitudes of the percent change in trend slope when the sample
#: starts at the headline comparison year instead of the base year.
REFERENCE_HEADLINE_PCT = {
    "real_rate": 25.0,
    "cost_of_capital": 37.0,
    "profit_share": 14.0,
    "markup": 14.0,
}
HEADLINE_PCT_TOLERANCE = 5.0
REFERENCE_PROFIT_GAP_DOLLARS = 260e9
PROFIT_GAP_TOLERANCE_DOLLARS = 50e9
REFERENCE_PROFIT_GAP_PER_WORKER = 3000.0
PROFIT_GAP_PER_WORKER_TOLERANCE = 600.0


@dataclass(frozen=True)
class ReportBundle:
    """Paths of one build run plus the in-memory results behind them."""

    out_dir: Path
    files: dict[str, Path]
    headline: dict[str, Any]
    manifest: dict[str, Any]


def load_effective_config(
    config_path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Defaults, overlaid by a JSON config file, overlaid by CLI overrides."""
    config = dict(DEFAULT_CONFIG)
    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError(f"config-missing: {path}")
        try:
            loaded = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as err:
            raise ConfigError(f"config-invalid: {path}: {err}") from err
        if not isinstance(loaded, dict):
            raise ConfigError(f"config-invalid: {path} must hold a JSON object")
        unknown = sorted(set(loaded) - set(DEFAULT_CONFIG))
        if unknown:
            raise ConfigError(f"config-invalid: unknown keys {unknown}")
        config.update(loaded)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in DEFAULT_CONFIG:
            raise ConfigError(f"config-invalid: unknown key {key!r}")
        config[key] = value
    try:
        dt.date.fromisoformat(str(config["sweep_end"]))
    except ValueError as err:
        raise ConfigError(f"config-invalid: sweep_end: {err}") from err
    if config["sweep_base_year"] not in config["sweep_start_years"]:
        raise ConfigError(
            "config-invalid: sweep_base_year must be among sweep_start_years"
        )
    if config["headline_comparison_year"] not in config["sweep_start_years"]:
        raise ConfigError(
            "config-invalid: headline_comparison_year must be among sweep_start_years"
        )
    return config


def _portable_config(config: Mapping[str, Any]) -> dict[str, Any]:
    """Config with machine-local keys removed (stable across checkouts)."""
    portable = {k: v for k, v in config.items() if k not in ("out", "snapshot")}
    return portable


def config_sha256(config: Mapping[str, Any]) -> str:
    canonical = json.dumps(_portable_config(config), sort_keys=True)
    return hashlib.sha256(canonical.encode()).hexdigest()


def open_snapshot(config: Mapping[str, Any]) -> Snapshot:
    path = config.get("snapshot") or bundled_snapshot_path()
    path = Path(path)
    if not (path / "manifest.json").exists():
        raise DataError(f"no-snapshot: no manifest.json under {path}")
    return snapshot_load(path)


def build_bundle(snapshot: Snapshot, config: Mapping[str, Any]) -> dict[str, TimeSeries]:
    return build_series_bundle(
        snapshot.all_series(),
        equity_premium=float(config["equity_premium"]),
        include_production_taxes=bool(config["include_production_taxes"]),
        inflation_growth=str(config["inflation_growth"]),
    )


# ---------------------------------------------------------------------------
# emitters


def _format_value(v: Any) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def write_tidy_csv(
    path: Path, rows: Iterable[tuple[str, dt.date, float, str]]
) -> Path:
    """Write tidy long-format figure data: one row per series-date-facet."""
    lines = ["series,date,value,facet"]
    lines += [
        f"{series},{date.isoformat()},{float(value)!r},{facet}"
        for series, date, value, facet in rows
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def _observed_and_trend_rows(
    s: TimeSeries, window: Window
) -> list[tuple[str, dt.date, float, str]]:
    rows = [(s.series_id, d, v, "observed") for d, v in s]
    fit = fit_linear(s, window)
    assert fit.dates is not None and fit.time_origin is not None
    t = years_since(fit.dates, fit.time_origin)
    rows += [
        (s.series_id, d, float(fit.predict(ti)), "trend")
        for d, ti in zip(fit.dates, t)
    ]
    return rows


def _sweep_rows(sweep: SensitivitySweep) -> list[tuple[str, dt.date, float, str]]:
    rows: list[tuple[str, dt.date, float, str]] = []
    for year in sweep.years:
        stamp = dt.date(year, 1, 1)
        rows.append((sweep.series_id, stamp, sweep.fits[year].slope, "slope"))
        rows.append((sweep.series_id, stamp, sweep.pct_change[year], "pct_change"))
    if sweep.overlay is not None:
        for year in sweep.years:
            for month in (1, 4, 7, 10):
                x = year + (month - 1) / 12.0
                rows.append(
                    (
                        sweep.series_id,
                        dt.date(year, month, 1),
                        float(sweep.overlay.predict(x)),
                        "pct_change_quadratic",
                    )
                )
    return rows


def _sweep_for(
    bundle: Mapping[str, TimeSeries], config: Mapping[str, Any], name: str
) -> SensitivitySweep:
    if name not in bundle:
        raise ConfigError(f"unknown-series: {name!r} (have {sorted(bundle)})")
    return start_date_sweep(
        bundle[name],
        [int(y) for y in config["sweep_start_years"]],
        dt.date.fromisoformat(str(config["sweep_end"])),
        int(config["sweep_base_year"]),
    )


def _table_rows(
    bundle: Mapping[str, TimeSeries], config: Mapping[str, Any]
) -> list[dict[str, Any]]:
    table = long_difference_table(
        {name: bundle[name] for name in SWEEP_SERIES},
        int(config["table_span_years"]),
        [int(y) for y in config["table_end_years"]],
        how=str(config["annual_how"]),
    )
    rows = []
    for row in table.rows:
        rows.append(
            {
                "window": row.label,
                "start_year": row.start_year,
                "end_year": row.end_year,
                "real_rate_pp": row.values["real_rate"],
                "cost_of_capital_pp": row.values["cost_of_capital"],
                "profit_share": row.values["profit_share"],
                "markup": row.values["markup"],
            }
        )
    return rows


def _write_table_csv(path: Path, rows: list[dict[str, Any]]) -> Path:
    columns = [
        "window",
        "start_year",
        "end_year",
        "real_rate_pp",
        "cost_of_capital_pp",
        "profit_share",
        "markup",
    ]
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_format_value(row[c]) for c in columns))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def _table_check(rows: list[dict[str, Any]]) -> list[dict[str, Any]]:
    """Per-cell comparison against the published reference values."""
    by_window = {(r["start_year"], r["end_year"]): r for r in rows}
    checks = []
    for (start, end), expected in sorted(REFERENCE_TABLE.items()):
        row = by_window.get((start, end))
        for column, ref in sorted(expected.items()):
            if row is None:
                checks.append(
                    {
                        "window": f"{start}-{end}",
                        "series": column,
                        "value": None,
                        "reference": ref,
                        "delta": None,
                        "within_tolerance": False,
                    }
                )
                continue
            if column == "profit_share_pp":
                value = 100.0 * row["profit_share"]
            else:
                value = row[f"{column}_pp"]
            delta = value - ref
            checks.append(
                {
                    "window": f"{start}-{end}",
                    "series": column,
                    "value": value,
                    "reference": ref,
                    "delta": delta,
                    "within_tolerance": abs(delta) <= TABLE_TOLERANCE_PP,
                }
            )
    return checks


def compute_headline(
    bundle: Mapping[str, TimeSeries], config: Mapping[str, Any]
) -> dict[str, Any]:
    """Trend-sensitivity headline numbers from the start-year sweeps.

    The profit gap converts the slope difference into dollars: (comparison
    slope - base slope) times the years from the comparison start to the
    sweep end, times nominal value added in the end year. Dividing by end
    year employment gives the per-worker figure.
    """
    base_year = int(config["sweep_base_year"])
    comparison_year = int(config["headline_comparison_year"])
    sweep_end = dt.date.fromisoformat(str(config["sweep_end"]))
    sweeps = {name: _sweep_for(bundle, config, name) for name in SWEEP_SERIES}
    pct = {
        name: sweep.pct_change[comparison_year] for name, sweep in sweeps.items()
    }
    profit_sweep = sweeps["profit_share"]
    slope_gap = (
        profit_sweep.fits[comparison_year].slope - profit_sweep.fits[base_year].slope
    )
    horizon_years = float(sweep_end.year - comparison_year)
    gva_annual = resample_annual(
        bundle["gross_value_added"], how=str(config["annual_how"])
    )
    employment_annual = resample_annual(
        bundle["employment"], how=str(config["annual_how"])
    )
    gva_end = gva_annual.value_at(dt.date(sweep_end.year, 1, 1))
    employment_end = employment_annual.value_at(dt.date(sweep_end.year, 1, 1))
    profit_gap_share = slope_gap * horizon_years
    profit_gap_dollars = profit_gap_share * gva_end
    return {
        "base_year": base_year,
        "comparison_year": comparison_year,
        "sweep_end": sweep_end.isoformat(),
        "horizon_years": horizon_years,
        "pct_change": pct,
        "abs_pct_change": {name: abs(v) for name, v in pct.items()},
        "slopes": {
            name: {
                "base": sweep.fits[base_year].slope,
                "comparison": sweep.fits[comparison_year].slope,
            }
            for name, sweep in sweeps.items()
        },
        "profit_trend_gap_share": profit_gap_share,
        "profit_gap_dollars": profit_gap_dollars,
        "profit_gap_per_worker": profit_gap_dollars / employment_end,
        "gross_value_added_end_year": gva_end,
        "employment_end_year": employment_end,
    }


def _headline_check(headline: Mapping[str, Any]) -> dict[str, Any]:
    checks: dict[str, Any] = {}
    for name, ref in REFERENCE_HEADLINE_PCT.items():
        value = headline["abs_pct_change"][name]
        checks[name] = {
            "value": value,
            "reference": ref,
            "within_tolerance": abs(value - ref) <= HEADLINE_PCT_TOLERANCE,
        }
    checks["profit_gap_dollars"] = {
        "value": headline["profit_gap_dollars"],
        "reference": REFERENCE_PROFIT_GAP_DOLLARS,
        "within_tolerance": abs(
            headline["profit_gap_dollars"] - REFERENCE_PROFIT_GAP_DOLLARS
        )
        <= PROFIT_GAP_TOLERANCE_DOLLARS,
    }
    checks["profit_gap_per_worker"] = {
        "value": headline["profit_gap_per_worker"],
        "reference": REFERENCE_PROFIT_GAP_PER_WORKER,
        "within_tolerance": abs(
            headline["profit_gap_per_worker"] - REFERENCE_PROFIT_GAP_PER_WORKER
        )
        <= PROFIT_GAP_PER_WORKER_TOLERANCE,
    }
    return checks


def _write_json(path: Path, payload: Mapping[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path


def _sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_build(config: Mapping[str, Any]) -> ReportBundle:
    """Produce the full report bundle from a snapshot into ``config["out"]``."""
    snapshot = open_snapshot(config)
    bundle = build_bundle(snapshot, config)
    out_dir = Path(config["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    trend_window = Window(
        dt.date(int(config["trend_start_year"]), 1, 1),
        dt.date(int(config["trend_end_year"]), 12, 31),
    )
    files: dict[str, Path] = {}

    files["fig1_real_rate.csv"] = write_tidy_csv(
        out_dir / "fig1_real_rate.csv",
        _observed_and_trend_rows(bundle["real_rate"], trend_window),
    )
    files["fig2_cost_of_capital.csv"] = write_tidy_csv(
        out_dir / "fig2_cost_of_capital.csv",
        _observed_and_trend_rows(bundle["cost_of_capital"], trend_window),
    )
    fig3_rows = _observed_and_trend_rows(bundle["profit_share"], trend_window)
    fig3_rows += _observed_and_trend_rows(bundle["markup"], trend_window)
    files["fig3_profit_markup.csv"] = write_tidy_csv(
        out_dir / "fig3_profit_markup.csv", fig3_rows
    )

    diag_window = Window(
        dt.date(int(config["diagnose_start_year"]), 1, 1),
        dt.date(int(config["diagnose_end_year"]), 12, 31),
    )
    report = volatility_influence_report(
        bundle["real_rate"], diag_window, float(config["vol_window_years"])
    )
    fig4_rows: list[tuple[str, dt.date, float, str]] = []
    for i, date in enumerate(report.dates):
        fig4_rows.append(("real_rate", date, report.values[i], "observed"))
        if report.volatility[i] == report.volatility[i]:  # skip NaN warm-up
            fig4_rows.append(("real_rate", date, report.volatility[i], "volatility"))
        fig4_rows.append(("real_rate", date, report.influence[i], "influence"))
        fig4_rows.append(("real_rate", date, report.cooks_d[i], "cooks_distance"))
        fig4_rows.append(("real_rate", date, report.leverage[i], "leverage"))
    files["fig4_influence.csv"] = write_tidy_csv(out_dir / "fig4_influence.csv", fig4_rows)

    for name in SWEEP_SERIES:
        sweep = _sweep_for(bundle, config, name)
        files[f"sweep_{name}.csv"] = write_tidy_csv(
            out_dir / f"sweep_{name}.csv", _sweep_rows(sweep)
        )

    table_rows = _table_rows(bundle, config)
    files["table1.csv"] = _write_table_csv(out_dir / "table1.csv", table_rows)

    headline = compute_headline(bundle, config)
    files["headline.json"] = _write_json(out_dir / "headline.json", headline)

    manifest = {
        "package_version": __version__,
        "config": _portable_config(config),
        "config_sha256": config_sha256(config),
        "snapshot_vintage": snapshot.vintage,
        "snapshot_manifest_sha256": snapshot.manifest_sha256(),
        "outputs": {name: _sha256_file(path) for name, path in sorted(files.items())},
        "table1_check": _table_check(table_rows),
        "table1_tolerance_pp": TABLE_TOLERANCE_PP,
        "headline_check": _headline_check(headline),
    }
    files["manifest.json"] = _write_json(out_dir / "manifest.json", manifest)
    return ReportBundle(out_dir=out_dir, files=files, headline=headline, manifest=manifest)


def run_sweep(
    config: Mapping[str, Any],
    series_name: str,
    mode: str = SweepMode.START_SWEEP.value,
    years: Iterable[int] | None = None,
    base_year: int | None = None,
    fixed_end: str | None = None,
) -> dict[str, Path]:
    """Emit one sweep's slopes, percent changes, and quadratic overlay."""
    snapshot = open_snapshot(config)
    bundle = build_bundle(snapshot, config)
    if series_name not in bundle:
        raise ConfigError(f"unknown-series: {series_name!r} (have {sorted(bundle)})")
    mode = SweepMode(mode)
    years = [int(y) for y in (years or config["sweep_start_years"])]
    base = int(base_year if base_year is not None else config["sweep_base_year"])
    anchor = dt.date.fromisoformat(str(fixed_end or config["sweep_end"]))
    if mode is SweepMode.START_SWEEP:
        sweep = start_date_sweep(bundle[series_name], years, anchor, base)
    else:
        sweep = end_date_sweep(bundle[series_name], years, anchor, base)
    out_dir = Path(config["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_tidy_csv(out_dir / f"sweep_{series_name}.csv", _sweep_rows(sweep))
    summary = {
        "series": series_name,
        "mode": mode.value,
        "base_year": sweep.base_year,
        "fixed_point": sweep.fixed_point.isoformat(),
        "slopes": {str(y): sweep.fits[y].slope for y in sweep.years},
        "pct_change": {str(y): sweep.pct_change[y] for y in sweep.years},
        "overlay_coefficients": (
            list(sweep.overlay.coefficients) if sweep.overlay else None
        ),
    }
    json_path = _write_json(out_dir / f"sweep_{series_name}.json", summary)
    return {"csv": csv_path, "json": json_path}


def run_diagnose(
    config: Mapping[str, Any],
    series_name: str,
    start_year: int | None = None,
    end_year: int | None = None,
    vol_window_years: float | None = None,
) -> dict[str, Path]:
    """Emit per-date volatility/influence/Cook's distance for one series."""
    snapshot = open_snapshot(config)
    bundle = build_bundle(snapshot, config)
    if series_name not in bundle:
        raise ConfigError(f"unknown-series: {series_name!r} (have {sorted(bundle)})")
    window = Window(
        dt.date(int(start_year or config["diagnose_start_year"]), 1, 1),
        dt.date(int(end_year or config["diagnose_end_year"]), 12, 31),
    )
    vol_years = float(vol_window_years or config["vol_window_years"])
    report = volatility_influence_report(bundle[series_name], window, vol_years)
    rows: list[tuple[str, dt.date, float, str]] = []
    for i, date in enumerate(report.dates):
        rows.append((series_name, date, report.values[i], "observed"))
        if report.volatility[i] == report.volatility[i]:
            rows.append((series_name, date, report.volatility[i], "volatility"))
        rows.append((series_name, date, report.influence[i], "influence"))
        rows.append((series_name, date, report.cooks_d[i], "cooks_distance"))
        rows.append((series_name, date, report.leverage[i], "leverage"))
    out_dir = Path(config["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_tidy_csv(out_dir / f"diagnose_{series_name}.csv", rows)
    vol_pairs = [
        (d, v) for d, v in zip(report.dates, report.volatility) if v == v
    ]
    top_cooks = sorted(
        zip(report.cooks_d, report.dates), key=lambda p: (-p[0], p[1])
    )[:5]
    summary = {
        "series": series_name,
        "window": [window.start.isoformat(), window.end.isoformat()],
        "vol_window_years": vol_years,
        "slope_per_year": report.fit.slope,
        "vol_influence_rank_corr": report.vol_influence_rank_corr,
        "peak_volatility_date": (
            max(vol_pairs, key=lambda p: p[1])[0].isoformat() if vol_pairs else None
        ),
        "top_cooks_distance": [
            {"date": d.isoformat(), "value": v} for v, d in top_cooks
        ],
    }
    json_path = _write_json(out_dir / f"diagnose_{series_name}.json", summary)
    return {"csv": csv_path, "json": json_path}


def run_table1(config: Mapping[str, Any]) -> dict[str, Path]:
    """Emit the long-difference table and its reference check."""
    snapshot = open_snapshot(config)
    bundle = build_bundle(snapshot, config)
    rows = _table_rows(bundle, config)
    out_dir = Path(config["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = _write_table_csv(out_dir / "table1.csv", rows)
    json_path = _write_json(
        out_dir / "table1_check.json",
        {"tolerance_pp": TABLE_TOLERANCE_PP, "cells": _table_check(rows)},
    )
    return {"csv": csv_path, "json": json_path}
