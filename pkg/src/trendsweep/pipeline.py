"""Construction of the economic series from raw market and accounts inputs.

The chain runs: capital price index -> expected inflation -> real rate;
bond and Treasury yields -> cost of finance (debt/equity weighted average)
-> cost of capital (finance cost adjusted for expected capital inflation,
depreciation, taxes, and depreciation allowances); national accounts ->
profit share (the value-added residual) -> implied markup and dollar
aggregates.

Percent-point series (yields, rates) carry values like ``4.2`` meaning
4.2pp; shares (tax rate, debt share, depreciation-allowance value, profit
share) are plain ratios.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .errors import DataError, DomainError
from .series import (
    Frequency,
    TimeSeries,
    Unit,
    align,
    moving_average,
    period_index,
)

__all__ = [
    "CapitalCostInputs",
    "AccountsBundle",
    "annual_to_quarterly",
    "expected_inflation",
    "real_rate",
    "cost_of_finance",
    "cost_of_capital",
    "profit_share",
    "value_added_shares",
    "markup",
    "profit_dollars",
    "profit_per_worker",
    "build_series_bundle",
]

#: Default equity risk premium over the risk-free yield, percent points.
DEFAULT_EQUITY_PREMIUM = 5.0

#: Years averaged to turn realized capital inflation into the expected rate.
EXPECTED_INFLATION_YEARS = 3.0


def _pointwise(
    fn: Callable[..., np.ndarray],
    *series: TimeSeries,
    series_id: str,
    unit: Unit,
    meta: Mapping[str, object] | None = None,
) -> TimeSeries:
    """Align series, apply ``fn`` to their value arrays, rewrap the result."""
    aligned = align(*series)
    values = fn(*(s.values_array() for s in aligned))
    return TimeSeries(
        series_id=series_id,
        freq=aligned[0].freq,
        dates=aligned[0].dates,
        values=tuple(float(v) for v in values),
        unit=unit,
        meta=dict(meta or {}),
    )


def annual_to_quarterly(s: TimeSeries) -> TimeSeries:
    """Repeat each annual value at the four quarter starts of its year.

    A step function, not an interpolation: quarterly means reproduce the
    annual values exactly. Used to put annual accounts data on the same
    clock as quarterly market data.
    """
    if s.freq is not Frequency.ANNUAL:
        raise DomainError(
            f"not-annual: cannot broadcast '{s.series_id}' ({s.freq.value})"
        )
    pairs = [
        (dt.date(d.year, month, 1), v) for d, v in s for month in (1, 4, 7, 10)
    ]
    meta = dict(s.meta)
    meta["broadcast_from"] = "annual"
    return TimeSeries.from_pairs(s.series_id, Frequency.QUARTERLY, pairs, s.unit, meta)


def expected_inflation(
    capital_price_index: TimeSeries, growth: str = "log"
) -> TimeSeries:
    """Expected capital inflation: trailing 3y average of realized inflation.

    Realized inflation is the year-over-year growth of the capital price
    index at the index's own frequency, in percent points; ``growth`` picks
    log differences (default) or simple percent changes.
    """
    if growth not in ("log", "simple"):
        raise DomainError(f"unknown-growth: growth must be 'log' or 'simple', got {growth!r}")
    values = capital_price_index.values_array()
    if np.any(values <= 0):
        raise DomainError(
            f"nonpositive-index: '{capital_price_index.series_id}' must be positive"
        )
    freq = capital_price_index.freq
    if freq is Frequency.DAILY:
        raise DomainError("unsupported-frequency: daily price indexes are not supported")
    lag = {Frequency.ANNUAL: 1, Frequency.QUARTERLY: 4, Frequency.MONTHLY: 12}[freq]
    by_period = {
        period_index(d, freq): v for d, v in capital_price_index
    }
    pairs = []
    for d, v in capital_price_index:
        prev = by_period.get(period_index(d, freq) - lag)
        if prev is None:
            continue
        if growth == "log":
            g = 100.0 * np.log(v / prev)
        else:
            g = 100.0 * (v / prev - 1.0)
        pairs.append((d, float(g)))
    realized = TimeSeries.from_pairs(
        "realized_capital_inflation",
        freq,
        pairs,
        Unit.PERCENT_POINTS,
        {"growth": growth},
    )
    smoothed = moving_average(realized, EXPECTED_INFLATION_YEARS)
    return smoothed.replace(series_id="expected_inflation")


def real_rate(nominal: TimeSeries, expected_infl: TimeSeries) -> TimeSeries:
    """Nominal yield less expected capital inflation, percent points."""
    for s in (nominal, expected_infl):
        if s.unit is not Unit.PERCENT_POINTS:
            raise DomainError(
                f"unit-mismatch: '{s.series_id}' must be in percent points"
            )
    return _pointwise(
        lambda i, nu: i - nu,
        nominal,
        expected_infl,
        series_id="real_rate",
        unit=Unit.PERCENT_POINTS,
    )


@dataclass(frozen=True)
class CapitalCostInputs:
    """Inputs to the cost-of-finance and cost-of-capital formulas.

    ``treasury_yield`` and ``bond_yield`` in percent points; ``debt_share``,
    ``tax_rate`` and ``allowance_pv`` (present value of depreciation
    allowances per dollar invested) as ratios in [0, 1];
    ``expected_inflation`` and ``depreciation`` in percent points.
    """

    treasury_yield: TimeSeries
    bond_yield: TimeSeries
    debt_share: TimeSeries
    expected_inflation: TimeSeries
    depreciation: TimeSeries
    tax_rate: TimeSeries
    allowance_pv: TimeSeries
    equity_premium: float = DEFAULT_EQUITY_PREMIUM


def cost_of_finance(inputs: CapitalCostInputs) -> TimeSeries:
    """Weighted average of expected debt and equity returns, percent points.

    ``rho = d * R_d + (1 - d) * R_e`` with the expected equity return
    ``R_e`` equal to the Treasury yield plus the equity premium.
    """
    d = inputs.debt_share.values_array()
    if np.any((d < 0) | (d > 1)):
        raise DomainError(
            f"debt-share-range: '{inputs.debt_share.series_id}' must lie in [0, 1]"
        )
    return _pointwise(
        lambda i, rd, d: d * rd + (1.0 - d) * (i + inputs.equity_premium),
        inputs.treasury_yield,
        inputs.bond_yield,
        inputs.debt_share,
        series_id="cost_of_finance",
        unit=Unit.PERCENT_POINTS,
        meta={"equity_premium": inputs.equity_premium},
    )


def cost_of_capital(inputs: CapitalCostInputs) -> TimeSeries:
    """Rental rate of capital, percent points.

    ``R_c = (rho - nu + delta) * (1 - z * tau) / (1 - tau)``: the cost of
    finance net of expected capital inflation plus depreciation, scaled by
    the tax adjustment for depreciation allowances.
    """
    tau = inputs.tax_rate.values_array()
    if np.any(tau >= 1.0):
        raise DomainError(
            f"tax-rate-unity: '{inputs.tax_rate.series_id}' must stay below 1"
        )
    z = inputs.allowance_pv.values_array()
    if np.any((z < 0) | (z > 1)):
        raise DomainError(
            f"allowance-range: '{inputs.allowance_pv.series_id}' must lie in [0, 1]"
        )
    rho = cost_of_finance(inputs)
    return _pointwise(
        lambda rho, nu, delta, tau, z: (rho - nu + delta) * (1.0 - z * tau) / (1.0 - tau),
        rho,
        inputs.expected_inflation,
        inputs.depreciation,
        inputs.tax_rate,
        inputs.allowance_pv,
        series_id="cost_of_capital",
        unit=Unit.PERCENT_POINTS,
        meta={"equity_premium": inputs.equity_premium},
    )


@dataclass(frozen=True)
class AccountsBundle:
    """National-accounts series: all strictly positive dollar levels except
    ``employment`` (persons) and ``capital_price_index`` (index)."""

    gross_value_added: TimeSeries
    compensation: TimeSeries
    capital_stock: TimeSeries
    production_taxes: TimeSeries
    employment: TimeSeries
    capital_price_index: TimeSeries

    def __post_init__(self) -> None:
        for s in (
            self.gross_value_added,
            self.compensation,
            self.capital_stock,
            self.production_taxes,
            self.employment,
            self.capital_price_index,
        ):
            if np.any(s.values_array() <= 0):
                raise DomainError(
                    f"nonpositive-accounts: '{s.series_id}' must be strictly positive"
                )


def value_added_shares(
    acct: AccountsBundle,
    capital_cost: TimeSeries,
    include_production_taxes: bool = True,
) -> dict[str, TimeSeries]:
    """Decompose value added into labor, capital-cost, tax, and profit shares.

    The four shares sum to one at every date by construction; the profit
    share is the residual. With ``include_production_taxes=False`` the tax
    share is folded into profits (three components still sum to one with
    profit redefined accordingly).
    """
    y, wl, k, taxes, rc = align(
        acct.gross_value_added,
        acct.compensation,
        acct.capital_stock,
        acct.production_taxes,
        capital_cost,
    )
    y_vals = y.values_array()
    if np.any(y_vals <= 0):
        raise DomainError(f"nonpositive-output: '{y.series_id}' must be positive")
    labor = wl.values_array() / y_vals
    capital = (rc.values_array() / 100.0) * k.values_array() / y_vals
    tax = taxes.values_array() / y_vals if include_production_taxes else np.zeros_like(y_vals)
    profit = 1.0 - labor - capital - tax

    def wrap(series_id: str, values: np.ndarray) -> TimeSeries:
        return TimeSeries(
            series_id=series_id,
            freq=y.freq,
            dates=y.dates,
            values=tuple(float(v) for v in values),
            unit=Unit.RATIO,
            meta={"production_taxes_subtracted": include_production_taxes},
        )

    return {
        "labor": wrap("labor_share", labor),
        "capital": wrap("capital_cost_share", capital),
        "production_taxes": wrap("production_tax_share", tax),
        "profit": wrap("profit_share", profit),
    }


def profit_share(
    acct: AccountsBundle,
    capital_cost: TimeSeries,
    include_production_taxes: bool = True,
) -> TimeSeries:
    """Economic profit share of value added (dimensionless, may be negative).

    The residual after subtracting labor compensation, capital costs
    (``R_c * K``), and, by default, taxes on production from value added.
    """
    return value_added_shares(acct, capital_cost, include_production_taxes)["profit"]


def markup(profit: TimeSeries) -> TimeSeries:
    """Implied markup on gross output, ``2 / (2 - profit_share)``.

    Assumes constant returns and an intermediate-input share of revenue of
    one half. Defined for profit shares below 2; values below one are valid
    (negative economic profits).
    """
    p = profit.values_array()
    if np.any(p >= 2.0):
        raise DomainError(
            f"markup-pole: profit share must stay below 2, max is {p.max():g}"
        )
    return TimeSeries(
        series_id="markup",
        freq=profit.freq,
        dates=profit.dates,
        values=tuple(2.0 / (2.0 - v) for v in p),
        unit=Unit.RATIO,
        meta=dict(profit.meta),
    )


def profit_dollars(profit: TimeSeries, gross_value_added: TimeSeries) -> TimeSeries:
    """Profit share times nominal value added, current dollars."""
    return _pointwise(
        lambda p, y: p * y,
        profit,
        gross_value_added,
        series_id="profit_dollars",
        unit=Unit.DOLLARS,
    )


def profit_per_worker(profits: TimeSeries, employment: TimeSeries) -> TimeSeries:
    """Dollars of profit per employed person."""
    if np.any(employment.values_array() <= 0):
        raise DomainError(
            f"nonpositive-employment: '{employment.series_id}' must be positive"
        )
    return _pointwise(
        lambda p, e: p / e,
        profits,
        employment,
        series_id="profit_per_worker",
        unit=Unit.DOLLARS,
    )


#: Logical series ids a snapshot must provide to build the full bundle.
REQUIRED_SERIES = (
    "treasury_10y",
    "baa_yield",
    "capital_price_index",
    "debt_share",
    "depreciation_rate",
    "tax_rate",
    "depreciation_allowance",
    "gross_value_added",
    "compensation",
    "production_taxes",
    "capital_stock",
    "employment",
)


def _as_quarterly(s: TimeSeries) -> TimeSeries:
    if s.freq is Frequency.QUARTERLY:
        return s
    if s.freq is Frequency.ANNUAL:
        return annual_to_quarterly(s)
    raise DomainError(
        f"unsupported-frequency: '{s.series_id}' is {s.freq.value}; "
        "pipeline inputs must be annual or quarterly"
    )


def build_series_bundle(
    raw: Mapping[str, TimeSeries],
    *,
    equity_premium: float = DEFAULT_EQUITY_PREMIUM,
    include_production_taxes: bool = True,
    inflation_growth: str = "log",
) -> dict[str, TimeSeries]:
    """Construct every derived series from the raw snapshot series.

    ``raw`` maps the logical ids in :data:`REQUIRED_SERIES` to their series.
    Annual inputs are stepped up to quarterly so everything shares the
    quarterly clock of the market yields. Returns the derived series plus
    annual ``gross_value_added`` / ``employment`` passthroughs used by
    dollar headlines.
    """
    missing = [sid for sid in REQUIRED_SERIES if sid not in raw]
    if missing:
        raise DataError(f"missing-series: snapshot lacks {', '.join(missing)}")

    nu_native = expected_inflation(raw["capital_price_index"], growth=inflation_growth)
    nu = _as_quarterly(nu_native)
    treasury = _as_quarterly(raw["treasury_10y"])
    rr = real_rate(treasury, nu)

    inputs = CapitalCostInputs(
        treasury_yield=treasury,
        bond_yield=_as_quarterly(raw["baa_yield"]),
        debt_share=_as_quarterly(raw["debt_share"]),
        expected_inflation=nu,
        depreciation=_as_quarterly(raw["depreciation_rate"]),
        tax_rate=_as_quarterly(raw["tax_rate"]),
        allowance_pv=_as_quarterly(raw["depreciation_allowance"]),
        equity_premium=equity_premium,
    )
    rho = cost_of_finance(inputs)
    rc = cost_of_capital(inputs)

    acct = AccountsBundle(
        gross_value_added=_as_quarterly(raw["gross_value_added"]),
        compensation=_as_quarterly(raw["compensation"]),
        capital_stock=_as_quarterly(raw["capital_stock"]),
        production_taxes=_as_quarterly(raw["production_taxes"]),
        employment=raw["employment"],
        capital_price_index=raw["capital_price_index"],
    )
    shares = value_added_shares(acct, rc, include_production_taxes)
    profit = shares["profit"]
    return {
        "expected_inflation": nu,
        "real_rate": rr,
        "cost_of_finance": rho,
        "cost_of_capital": rc,
        "labor_share": shares["labor"],
        "capital_cost_share": shares["capital"],
        "production_tax_share": shares["production_taxes"],
        "profit_share": profit,
        "markup": markup(profit),
        "profit_dollars": profit_dollars(profit, acct.gross_value_added),
        "gross_value_added": raw["gross_value_added"],
        "employment": raw["employment"],
    }
