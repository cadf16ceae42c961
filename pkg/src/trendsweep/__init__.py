"""trendsweep: sample-window sensitivity diagnostics for macro trend estimates.

The library builds real-rate, cost-of-capital, profit-share, and markup
series from financial-market and national-accounts inputs, fits linear
trends over sliding sample windows, and diagnoses which observations drive
the estimates via influence statistics.
"""

__version__ = "0.1.0"

from .errors import ConfigError, DataError, DomainError, TrendsweepError
from .series import (
    Frequency,
    TimeSeries,
    Unit,
    Window,
    align,
    long_difference,
    moving_average,
    resample_annual,
    rolling_std,
    slice_window,
)
from .trend import (
    InfluenceReport,
    QuadraticFit,
    TrendFit,
    cooks_distance,
    fit_line,
    fit_linear,
    fit_quadratic,
    influence_report,
    influence_values,
    leave_one_out_slopes,
)
from .sensitivity import (
    LongDiffRow,
    LongDiffTable,
    SensitivitySweep,
    SweepMode,
    VolatilityInfluenceReport,
    end_date_sweep,
    long_difference_table,
    start_date_sweep,
    volatility_influence_report,
)
from .pipeline import (
    AccountsBundle,
    CapitalCostInputs,
    annual_to_quarterly,
    build_series_bundle,
    cost_of_capital,
    cost_of_finance,
    expected_inflation,
    markup,
    profit_dollars,
    profit_per_worker,
    profit_share,
    real_rate,
    value_added_shares,
)
from .ingestion import (
    SeriesSpec,
    Snapshot,
    fetch_fred,
    load_csv,
    parse_fred_observations,
    snapshot_create,
    snapshot_load,
    write_csv,
)

__all__ = [
    "__version__",
    "TrendsweepError",
    "ConfigError",
    "DataError",
    "DomainError",
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
    "SweepMode",
    "SensitivitySweep",
    "LongDiffRow",
    "LongDiffTable",
    "VolatilityInfluenceReport",
    "start_date_sweep",
    "end_date_sweep",
    "long_difference_table",
    "volatility_influence_report",
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
    "SeriesSpec",
    "Snapshot",
    "load_csv",
    "write_csv",
    "fetch_fred",
    "parse_fred_observations",
    "snapshot_create",
    "snapshot_load",
]
