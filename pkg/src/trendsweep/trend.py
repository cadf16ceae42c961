"""Linear and quadratic trend fitting with per-observation influence diagnostics.

The linear model is ``y = slope * t + intercept`` with ``t`` in fractional
years since a time origin (the first date of the fitted sample), so slopes
read as "units per year" at any input frequency.

Diagnostics quantify how single observations move the fitted trend:

* influence values: first-order effect of one observation on the slope,
  ``(t_i - mean(t)) / var(t) * residual_i`` with the population variance
  (divisor ``n``); the divisor choice only rescales all values uniformly.
* Cook's distance: computed with the closed form
  ``D_i = e_i^2 h_i / (2 mse (1 - h_i)^2)``, which is algebraically equal to
  the definitional sum over refits with one point deleted (the definitional
  form is kept in the tests as an oracle).
* leave-one-out slopes: direct refits with each observation removed.

All functions are pure; refits are independent and order-stable.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .series import TimeSeries, Window, slice_window

__all__ = [
    "TrendFit",
    "QuadraticFit",
    "InfluenceReport",
    "fit_line",
    "fit_linear",
    "fit_quadratic",
    "influence_values",
    "cooks_distance",
    "leave_one_out_slopes",
    "influence_report",
    "years_since",
]

#: Days per year used to convert calendar dates to fractional years.
DAYS_PER_YEAR = 365.25


def years_since(dates: Sequence[dt.date], origin: dt.date) -> np.ndarray:
    """Fractional years from ``origin`` to each date."""
    return np.array([(d - origin).days / DAYS_PER_YEAR for d in dates])


@dataclass(frozen=True)
class TrendFit:
    """OLS line fit over one sample window.

    ``t`` holds the regressor values actually used (fractional years since
    ``time_origin`` when fitted from a series), ``y`` the observations.
    """

    n: int
    slope: float
    intercept: float
    t: tuple[float, ...]
    y: tuple[float, ...]
    residuals: tuple[float, ...]
    leverage: tuple[float, ...]
    mse: float
    r2: float
    window: Window | None = None
    time_origin: dt.date | None = None
    dates: tuple[dt.date, ...] | None = None

    def predict(self, t: float | np.ndarray) -> float | np.ndarray:
        return self.slope * np.asarray(t) + self.intercept

    @property
    def fitted(self) -> np.ndarray:
        return self.predict(np.asarray(self.t))


@dataclass(frozen=True)
class QuadraticFit:
    """Least-squares parabola ``y = a x^2 + b x + c`` in original units.

    Fitted via normal equations on centered/scaled ``x`` for conditioning;
    ``x_center``/``x_scale`` record the transformation.
    """

    a: float
    b: float
    c: float
    n: int
    residuals: tuple[float, ...]
    x_center: float
    x_scale: float

    def predict(self, x: float | np.ndarray) -> float | np.ndarray:
        x = np.asarray(x)
        return self.a * x**2 + self.b * x + self.c

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class InfluenceReport:
    """Per-observation influence diagnostics for one fitted trend."""

    influence: tuple[float, ...]
    cooks_d: tuple[float, ...]
    leverage: tuple[float, ...]
    loo_slope: tuple[float, ...]


def fit_line(
    t: Sequence[float] | np.ndarray,
    y: Sequence[float] | np.ndarray,
    *,
    window: Window | None = None,
    time_origin: dt.date | None = None,
    dates: Sequence[dt.date] | None = None,
) -> TrendFit:
    """OLS fit of ``y`` on ``t`` (plus intercept) from raw arrays."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    n = t.size
    if n < 3:
        raise DomainError(f"insufficient-points: need n >= 3, got {n}")
    if y.size != n:
        raise DomainError(f"length-mismatch: {n} t values vs {y.size} y values")
    t_bar = t.mean()
    y_bar = y.mean()
    dt_c = t - t_bar
    s_tt = float(dt_c @ dt_c)
    if s_tt == 0.0:
        raise DomainError("degenerate-time: all time values are identical")
    slope = float(dt_c @ (y - y_bar)) / s_tt
    intercept = y_bar - slope * t_bar
    residuals = y - (slope * t + intercept)
    sse = float(residuals @ residuals)
    sst = float((y - y_bar) @ (y - y_bar))
    leverage = 1.0 / n + dt_c**2 / s_tt
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    return TrendFit(
        n=n,
        slope=slope,
        intercept=float(intercept),
        t=tuple(t),
        y=tuple(y),
        residuals=tuple(residuals),
        leverage=tuple(leverage),
        mse=sse / (n - 2),
        r2=r2,
        window=window,
        time_origin=time_origin,
        dates=tuple(dates) if dates is not None else None,
    )


def fit_linear(s: TimeSeries, w: Window) -> TrendFit:
    """OLS line through the observations of ``s`` inside window ``w``.

    Time is measured in fractional years since the first observation in the
    window, so ``slope`` is in y-units per year.
    """
    sample = slice_window(s, w)
    if len(sample) < 3:
        raise DomainError(
            f"insufficient-points: window {w.start}..{w.end} of "
            f"'{s.series_id}' holds {len(sample)} point(s); need >= 3"
        )
    origin = sample.dates[0]
    t = years_since(sample.dates, origin)
    return fit_line(
        t,
        sample.values_array(),
        window=w,
        time_origin=origin,
        dates=sample.dates,
    )


def fit_quadratic(points: Iterable[tuple[float, float]]) -> QuadraticFit:
    """Least-squares quadratic through ``(x, y)`` points.

    Solves the 3x3 normal equations on ``z = (x - mean) / scale`` and maps
    the coefficients back to the original ``x`` units. Recovers exact
    quadratics to machine precision.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3 or len({x for x, _ in pts}) < 3:
        raise DomainError(
            f"rank-deficient: quadratic fit needs >= 3 distinct x values, "
            f"got {len({x for x, _ in pts})}"
        )
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    center = x.mean()
    scale = x.std()
    if scale == 0.0:
        raise DomainError("rank-deficient: zero spread in x")
    z = (x - center) / scale
    design = np.column_stack([np.ones_like(z), z, z**2])
    gram = design.T @ design
    coef = np.linalg.solve(gram, design.T @ y)
    c0, c1, c2 = coef
    # expand a_z z^2 + b_z z + c_z with z = (x - m)/s back to powers of x
    a = c2 / scale**2
    b = c1 / scale - 2.0 * c2 * center / scale**2
    c = c0 - c1 * center / scale + c2 * center**2 / scale**2
    residuals = y - (a * x**2 + b * x + c)
    return QuadraticFit(
        a=float(a),
        b=float(b),
        c=float(c),
        n=len(pts),
        residuals=tuple(residuals),
        x_center=float(center),
        x_scale=float(scale),
    )


def _check_fit_matches(fit: TrendFit, s: TimeSeries | None) -> None:
    if s is None or fit.dates is None:
        return
    window = fit.window or Window(fit.dates[0], fit.dates[-1])
    sample = slice_window(s, window)
    if tuple(sample.dates) != fit.dates:
        raise DomainError(
            "fit-mismatch: fit was not produced from this series over its window"
        )


def influence_values(fit: TrendFit, s: TimeSeries | None = None) -> np.ndarray:
    """First-order influence of each observation on the fitted slope.

    ``(t_i - mean(t)) / var(t) * (y_i - mean(y) - slope * (t_i - mean(t)))``
    with ``var`` the population moment (divisor ``n``). Zero exactly when the
    observation sits at the mean time value or on the fitted line.
    """
    _check_fit_matches(fit, s)
    t = np.asarray(fit.t)
    resid = np.asarray(fit.residuals)
    var_t = t.var()
    if var_t == 0.0:
        raise DomainError("degenerate-time: zero time variance")
    return (t - t.mean()) / var_t * resid


def cooks_distance(fit: TrendFit, s: TimeSeries | None = None) -> np.ndarray:
    """Cook's distance of each observation under the fitted line.

    Uses the O(n) closed form ``e^2 h / (2 mse (1 - h)^2)``. For an exact
    fit (``mse == 0``) deleting a point cannot change the line, so all
    distances are defined as 0 rather than NaN.
    """
    _check_fit_matches(fit, s)
    h = np.asarray(fit.leverage)
    if np.any(h >= 1.0 - 1e-12):
        raise DomainError("leverage-one: an observation has leverage 1")
    if fit.mse == 0.0:
        return np.zeros(fit.n)
    e = np.asarray(fit.residuals)
    return e**2 * h / (2.0 * fit.mse * (1.0 - h) ** 2)


def leave_one_out_slopes(fit: TrendFit, s: TimeSeries | None = None) -> np.ndarray:
    """Slope refitted with each observation removed in turn (direct refits)."""
    _check_fit_matches(fit, s)
    if fit.n < 4:
        raise DomainError(
            f"insufficient-points: leave-one-out needs n >= 4, got {fit.n}"
        )
    t = np.asarray(fit.t)
    y = np.asarray(fit.y)
    out = np.empty(fit.n)
    for i in range(fit.n):
        keep = np.arange(fit.n) != i
        out[i] = fit_line(t[keep], y[keep]).slope
    return out


def influence_report(fit: TrendFit, s: TimeSeries | None = None) -> InfluenceReport:
    """All per-observation diagnostics bundled together."""
    return InfluenceReport(
        influence=tuple(influence_values(fit, s)),
        cooks_d=tuple(cooks_distance(fit, s)),
        leverage=fit.leverage,
        loo_slope=tuple(leave_one_out_slopes(fit, s)),
    )
