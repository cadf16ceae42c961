"""Frequency-aware time series container and window/transform primitives.

A :class:`TimeSeries` is an immutable, ordered set of ``(date, value)``
observations at a declared frequency, all sharing one unit. Every operation
in this module is a pure function: inputs are never mutated and results are
deterministic, so values are safe to share across threads.

Conventions (documented here once, relied on everywhere):

* Dates are calendar dates. Quarterly observations are stamped at quarter
  start (Jan/Apr/Jul/Oct 1), matching the FRED convention.
* Rolling windows are trailing and emit only when the full expected number
  of observations is present; partial windows are dropped, never padded or
  interpolated.
* Missing interior observations are allowed (they simply drop the windows
  that would have needed them); sub-frequency spacing is not.
"""

from __future__ import annotations

import calendar
import datetime as dt
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DataError, DomainError

__all__ = [
    "Frequency",
    "Unit",
    "TimeSeries",
    "Window",
    "slice_window",
    "resample_annual",
    "moving_average",
    "rolling_std",
    "long_difference",
    "align",
]


class Frequency(str, Enum):
    """Observation frequency of a series."""

    ANNUAL = "annual"
    QUARTERLY = "quarterly"
    MONTHLY = "monthly"
    DAILY = "daily"


class Unit(str, Enum):
    """Measurement unit shared by all points of a series."""

    PERCENT_POINTS = "percent_points"
    RATIO = "ratio"
    DOLLARS = "dollars"
    INDEX = "index"
    COUNT = "count"


#: Regular sub-periods per calendar year. Daily series use calendar-day
#: ordinals instead (see :func:`period_index`).
PERIODS_PER_YEAR = {
    Frequency.ANNUAL: 1,
    Frequency.QUARTERLY: 4,
    Frequency.MONTHLY: 12,
}


def period_index(date: dt.date, freq: Frequency) -> int:
    """Integer index of the period containing ``date`` at frequency ``freq``.

    Consecutive periods map to consecutive integers, so spacing and window
    arithmetic reduce to integer arithmetic regardless of month lengths.
    """
    if freq is Frequency.ANNUAL:
        return date.year
    if freq is Frequency.QUARTERLY:
        return date.year * 4 + (date.month - 1) // 3
    if freq is Frequency.MONTHLY:
        return date.year * 12 + (date.month - 1)
    return date.toordinal()


def periods_in_years(years: float, freq: Frequency) -> int:
    """Number of consecutive periods spanned by ``years`` at ``freq``."""
    if freq is Frequency.DAILY:
        return int(round(years * 365.25))
    return int(round(years * PERIODS_PER_YEAR[freq]))


def _expected_periods_in_year(year: int, freq: Frequency) -> int:
    if freq is Frequency.DAILY:
        return 366 if calendar.isleap(year) else 365
    return PERIODS_PER_YEAR[freq]


@dataclass(frozen=True)
class Window:
    """Inclusive date interval used to select sample windows."""

    start: dt.date
    end: dt.date

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise DomainError(
                f"window-invalid: start {self.start} is after end {self.end}"
            )

    def contains(self, date: dt.date) -> bool:
        return self.start <= date <= self.end

    def intersect(self, other: "Window") -> "Window | None":
        """Overlap of two windows, or None when they are disjoint."""
        start = max(self.start, other.start)
        end = min(self.end, other.end)
        if start > end:
            return None
        return Window(start, end)


@dataclass(frozen=True)
class TimeSeries:
    """Ordered ``(date, value)`` observations at one frequency and unit.

    Invariants enforced at construction: dates strictly increasing with no
    two observations inside the same period (no sub-frequency spacing; gaps
    are fine), all values finite.
    """

    series_id: str
    freq: Frequency
    dates: tuple[dt.date, ...]
    values: tuple[float, ...]
    unit: Unit
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "freq", Frequency(self.freq))
        object.__setattr__(self, "unit", Unit(self.unit))
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "meta", dict(self.meta))
        if len(self.dates) != len(self.values):
            raise DataError(
                f"length-mismatch: {len(self.dates)} dates vs "
                f"{len(self.values)} values in '{self.series_id}'"
            )
        for v in self.values:
            if not math.isfinite(v):
                raise DataError(
                    f"nonfinite-value: series '{self.series_id}' contains {v!r}"
                )
        indices = [period_index(d, self.freq) for d in self.dates]
        for prev, cur, d in zip(indices, indices[1:], self.dates[1:]):
            if cur <= prev:
                raise DataError(
                    "frequency-mismatch: dates must be strictly increasing with "
                    f"at most one observation per {self.freq.value} period; "
                    f"offending date {d} in '{self.series_id}'"
                )

    def __len__(self) -> int:
        return len(self.dates)

    def __iter__(self) -> Iterator[tuple[dt.date, float]]:
        return iter(zip(self.dates, self.values))

    @property
    def start(self) -> dt.date:
        return self.dates[0]

    @property
    def end(self) -> dt.date:
        return self.dates[-1]

    def values_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def value_at(self, date: dt.date) -> float:
        try:
            return self.values[self.dates.index(date)]
        except ValueError:
            raise DataError(
                f"missing-date: series '{self.series_id}' has no observation "
                f"at {date}"
            ) from None

    def replace(
        self,
        *,
        series_id: str | None = None,
        values: Sequence[float] | None = None,
        unit: Unit | None = None,
        meta: Mapping[str, object] | None = None,
    ) -> "TimeSeries":
        """Copy with selected fields replaced (dates and freq kept)."""
        return TimeSeries(
            series_id=series_id if series_id is not None else self.series_id,
            freq=self.freq,
            dates=self.dates,
            values=tuple(values) if values is not None else self.values,
            unit=unit if unit is not None else self.unit,
            meta=meta if meta is not None else self.meta,
        )

    @classmethod
    def from_pairs(
        cls,
        series_id: str,
        freq: Frequency,
        pairs: Iterable[tuple[dt.date, float]],
        unit: Unit,
        meta: Mapping[str, object] | None = None,
    ) -> "TimeSeries":
        pairs = list(pairs)
        return cls(
            series_id=series_id,
            freq=freq,
            dates=tuple(p[0] for p in pairs),
            values=tuple(p[1] for p in pairs),
            unit=unit,
            meta=meta or {},
        )


def slice_window(s: TimeSeries, w: Window) -> TimeSeries:
    """Observations with ``w.start <= date <= w.end``; may be empty."""
    pairs = [(d, v) for d, v in s if w.contains(d)]
    return TimeSeries.from_pairs(s.series_id, s.freq, pairs, s.unit, s.meta)


def resample_annual(s: TimeSeries, how: str = "mean") -> TimeSeries:
    """Collapse a series to one observation per calendar year.

    ``how="mean"`` averages all sub-annual observations in the year;
    ``how="last"`` takes the final one. Annual input is returned unchanged.
    Output observations are stamped at Jan 1. Years with fewer observations
    than the frequency implies are still emitted but recorded under
    ``meta["partial_years"]``.
    """
    if how not in ("mean", "last"):
        raise DomainError(f"unknown-resample: how must be 'mean' or 'last', got {how!r}")
    if s.freq is Frequency.ANNUAL:
        return s
    grouped: dict[int, list[float]] = {}
    for d, v in s:
        grouped.setdefault(d.year, []).append(v)
    partial = tuple(
        year
        for year, vals in sorted(grouped.items())
        if len(vals) < _expected_periods_in_year(year, s.freq)
    )
    pairs = []
    for year, vals in sorted(grouped.items()):
        value = sum(vals) / len(vals) if how == "mean" else vals[-1]
        pairs.append((dt.date(year, 1, 1), value))
    meta = dict(s.meta)
    meta.update(
        resampled_from=s.freq.value,
        resample_how=how,
        partial_years=partial,
    )
    return TimeSeries.from_pairs(s.series_id, Frequency.ANNUAL, pairs, s.unit, meta)


def _trailing_full_windows(
    s: TimeSeries, window_years: float, min_periods: int = 1
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(end_index, window_values)`` for every full trailing window.

    A window ending at observation ``i`` covers the ``n`` consecutive periods
    up to and including ``i``'s period; it is full exactly when all ``n``
    observations are present.
    """
    n = periods_in_years(window_years, s.freq)
    if n < min_periods:
        raise DomainError(
            f"window-too-short: {window_years}y at {s.freq.value} frequency "
            f"gives {n} point(s); need at least {min_periods}"
        )
    idx = np.array([period_index(d, s.freq) for d in s.dates])
    vals = s.values_array()
    start = 0
    for i in range(len(s)):
        while idx[i] - idx[start] >= n:
            start += 1
        if i - start + 1 == n:
            yield i, vals[start : i + 1]


def moving_average(s: TimeSeries, window_years: float) -> TimeSeries:
    """Trailing moving average over ``window_years`` of observations.

    Each output point is the mean of the observations in the trailing
    window ending at (and including) that date. Windows missing any
    observation are dropped, so the output starts after a warm-up span.
    """
    if window_years <= 0:
        raise DomainError(f"window-invalid: window_years must be positive, got {window_years}")
    if len(s) == 0:
        raise DataError(f"empty-series: cannot average '{s.series_id}'")
    pairs = [
        (s.dates[i], float(np.mean(win)))
        for i, win in _trailing_full_windows(s, window_years)
    ]
    meta = dict(s.meta)
    meta["moving_average_years"] = window_years
    return TimeSeries.from_pairs(s.series_id, s.freq, pairs, s.unit, meta)


def rolling_std(s: TimeSeries, window_years: float) -> TimeSeries:
    """Trailing sample standard deviation (divisor ``n - 1``) per window.

    Same full-window rule as :func:`moving_average`. Raises when no window
    can be emitted or when a window would hold fewer than two observations.
    """
    if window_years <= 0:
        raise DomainError(f"window-invalid: window_years must be positive, got {window_years}")
    if len(s) == 0:
        raise DataError(f"empty-series: cannot compute rolling std of '{s.series_id}'")
    pairs = [
        (s.dates[i], float(np.std(win, ddof=1)))
        for i, win in _trailing_full_windows(s, window_years, min_periods=2)
    ]
    if not pairs:
        raise DataError(
            f"no-full-window: '{s.series_id}' has no complete "
            f"{window_years}y window with at least 2 points"
        )
    meta = dict(s.meta)
    meta["rolling_std_years"] = window_years
    return TimeSeries.from_pairs(s.series_id, s.freq, pairs, s.unit, meta)


def long_difference(
    s: TimeSeries, span_years: int, end_year: int, how: str = "mean"
) -> float:
    """``value(end_year) - value(end_year - span_years)`` on annual values.

    Sub-annual input is first collapsed with :func:`resample_annual` using
    ``how`` (annual means by default). The result keeps the series' unit.
    """
    annual = resample_annual(s, how=how)
    by_year = {d.year: v for d, v in annual}
    start_year = end_year - span_years
    for year in (start_year, end_year):
        if year not in by_year:
            raise DataError(
                f"missing-year: series '{s.series_id}' has no annual value "
                f"for {year}"
            )
    return by_year[end_year] - by_year[start_year]


def align(*series: TimeSeries) -> list[TimeSeries]:
    """Restrict all series to their common dates, preserving input order."""
    if not series:
        return []
    freqs = {s.freq for s in series}
    if len(freqs) > 1:
        raise DataError(
            "frequency-mismatch: cannot align "
            + ", ".join(f"'{s.series_id}' ({s.freq.value})" for s in series)
        )
    common = set(series[0].dates)
    for s in series[1:]:
        common &= set(s.dates)
    if not common:
        raise DataError(
            "empty-intersection: no common dates across "
            + ", ".join(f"'{s.series_id}'" for s in series)
        )
    out = []
    for s in series:
        pairs = [(d, v) for d, v in s if d in common]
        out.append(TimeSeries.from_pairs(s.series_id, s.freq, pairs, s.unit, s.meta))
    return out
