"""Sample-window sweeps and sensitivity diagnostics for trend estimates.

A sweep re-estimates a linear trend over windows that share one fixed
endpoint while the other endpoint varies by year, then reports each slope's
percent change against a base year,

    ``100 * (slope_year - slope_base) / slope_base``

The signed denominator makes the value invariant to any affine transform of
the series (including sign flips), and makes the sign itself meaningful: a
positive percent change always means the trend steepened relative to the
base sample, whether the underlying trend runs up or down. The quadratic
overlay fitted over the percent-change points is descriptive only; nothing
downstream consumes it.
"""

from __future__ import annotations

import datetime as dt
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from .errors import DataError, DomainError, TrendsweepError
from .series import TimeSeries, Window, long_difference, rolling_std
from .trend import QuadraticFit, TrendFit, cooks_distance, fit_linear, fit_quadratic, influence_values

__all__ = [
    "SweepMode",
    "SensitivitySweep",
    "LongDiffRow",
    "LongDiffTable",
    "VolatilityInfluenceReport",
    "start_date_sweep",
    "end_date_sweep",
    "long_difference_table",
    "volatility_influence_report",
]

#: Base slopes smaller than this (y-units per year) cannot anchor a sweep.
BASE_SLOPE_FLOOR = 1e-12


class SweepMode(str, Enum):
    START_SWEEP = "start_sweep"
    END_SWEEP = "end_sweep"


@dataclass(frozen=True)
class SensitivitySweep:
    """Trend fits indexed by varied year plus the percent-change curve."""

    series_id: str
    mode: SweepMode
    base_year: int
    fixed_point: dt.date
    fits: dict[int, TrendFit]
    pct_change: dict[int, float]
    overlay: QuadraticFit | None

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(sorted(self.fits))

    def slopes(self) -> dict[int, float]:
        return {year: fit.slope for year, fit in self.fits.items()}


def _sweep(
    s: TimeSeries,
    years: Sequence[int],
    mode: SweepMode,
    fixed_point: dt.date,
    base_year: int,
) -> SensitivitySweep:
    years = sorted(set(int(y) for y in years))
    if base_year not in years:
        raise DomainError(
            f"base-year-missing: base year {base_year} must be one of the "
            f"swept years {years}"
        )
    fits: dict[int, TrendFit] = {}
    for year in years:
        if mode is SweepMode.START_SWEEP:
            window = Window(dt.date(year, 1, 1), fixed_point)
        else:
            window = Window(fixed_point, dt.date(year, 12, 31))
        try:
            fits[year] = fit_linear(s, window)
        except TrendsweepError as err:
            raise type(err)(f"sweep-year {year}: {err}") from err
    base_slope = fits[base_year].slope
    if abs(base_slope) < BASE_SLOPE_FLOOR:
        raise DomainError(
            f"base-slope-zero: |slope| at base year {base_year} is "
            f"{abs(base_slope):.3e} (< {BASE_SLOPE_FLOOR})"
        )
    pct = {
        year: 100.0 * (fit.slope - base_slope) / base_slope
        for year, fit in fits.items()
    }
    pct[base_year] = 0.0
    overlay = (
        fit_quadratic([(float(y), pct[y]) for y in years]) if len(years) >= 3 else None
    )
    return SensitivitySweep(
        series_id=s.series_id,
        mode=mode,
        base_year=base_year,
        fixed_point=fixed_point,
        fits=fits,
        pct_change=pct,
        overlay=overlay,
    )


def start_date_sweep(
    s: TimeSeries,
    start_years: Sequence[int],
    end: dt.date,
    base_year: int,
) -> SensitivitySweep:
    """Re-fit the trend from Jan 1 of each start year through ``end``."""
    return _sweep(s, start_years, SweepMode.START_SWEEP, end, base_year)


def end_date_sweep(
    s: TimeSeries,
    end_years: Sequence[int],
    start: dt.date,
    base_year: int,
) -> SensitivitySweep:
    """Re-fit the trend from ``start`` through Dec 31 of each end year."""
    return _sweep(s, end_years, SweepMode.END_SWEEP, start, base_year)


@dataclass(frozen=True)
class LongDiffRow:
    label: str
    start_year: int
    end_year: int
    values: dict[str, float]


@dataclass(frozen=True)
class LongDiffTable:
    """Long differences of several series over a shifting fixed-span window."""

    span_years: int
    columns: tuple[str, ...]
    rows: tuple[LongDiffRow, ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if row.end_year - row.start_year != self.span_years:
                raise DomainError(
                    f"span-mismatch: row {row.label} does not span "
                    f"{self.span_years} years"
                )


def long_difference_table(
    series: Mapping[str, TimeSeries],
    span_years: int,
    end_years: Sequence[int],
    how: str = "mean",
) -> LongDiffTable:
    """One row per end year of ``value(end) - value(end - span)`` per series.

    Annual values are taken as calendar-year means of sub-annual data by
    default (``how``). A row is omitted with a warning when any series lacks
    one of its endpoint years.
    """
    rows = []
    for end_year in sorted(set(int(y) for y in end_years)):
        start_year = end_year - span_years
        values: dict[str, float] = {}
        try:
            for label, s in series.items():
                values[label] = long_difference(s, span_years, end_year, how=how)
        except DataError as err:
            warnings.warn(
                f"dropping {start_year}-{end_year} row: {err}",
                stacklevel=2,
            )
            continue
        rows.append(
            LongDiffRow(
                label=f"{start_year}-{end_year}",
                start_year=start_year,
                end_year=end_year,
                values=values,
            )
        )
    return LongDiffTable(
        span_years=span_years,
        columns=tuple(series.keys()),
        rows=tuple(rows),
    )


@dataclass(frozen=True)
class VolatilityInfluenceReport:
    """Joined per-date view of a series' volatility and trend influence.

    ``volatility`` is NaN on dates where the rolling window is not yet full.
    ``vol_influence_rank_corr`` is the Spearman correlation between rolling
    volatility and absolute influence over the dates where both exist (NaN
    when degenerate).
    """

    series_id: str
    window: Window
    vol_window_years: float
    dates: tuple[dt.date, ...]
    values: tuple[float, ...]
    volatility: tuple[float, ...]
    influence: tuple[float, ...]
    cooks_d: tuple[float, ...]
    leverage: tuple[float, ...]
    vol_influence_rank_corr: float
    fit: TrendFit


def volatility_influence_report(
    s: TimeSeries, w: Window, vol_window_years: float
) -> VolatilityInfluenceReport:
    """Fit a trend on ``s`` over ``w`` and join influence with rolling volatility.

    The rolling standard deviation is computed over the full series so the
    warm-up can draw on observations before the fit window.
    """
    fit = fit_linear(s, w)
    vol = rolling_std(s, vol_window_years)
    vol_by_date = dict(zip(vol.dates, vol.values))
    assert fit.dates is not None
    vol_joined = np.array([vol_by_date.get(d, np.nan) for d in fit.dates])
    infl = influence_values(fit)
    cooks = cooks_distance(fit)
    have_vol = ~np.isnan(vol_joined)
    rank_corr = float("nan")
    if have_vol.sum() >= 3:
        v = vol_joined[have_vol]
        a = np.abs(infl)[have_vol]
        if np.ptp(v) > 0 and np.ptp(a) > 0:
            rank_corr = float(stats.spearmanr(v, a).statistic)
    return VolatilityInfluenceReport(
        series_id=s.series_id,
        window=w,
        vol_window_years=vol_window_years,
        dates=fit.dates,
        values=fit.y,
        volatility=tuple(vol_joined),
        influence=tuple(infl),
        cooks_d=tuple(cooks),
        leverage=fit.leverage,
        vol_influence_rank_corr=rank_corr,
        fit=fit,
    )
