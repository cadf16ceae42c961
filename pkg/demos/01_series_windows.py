"""Window and rolling-statistic primitives on the bundled snapshot.

Walks the basic TimeSeries operations: slicing a sample window, collapsing
quarterly data to annual means, trailing moving averages, and rolling
standard deviations (the volatility measure used by the diagnostics).
"""

import datetime as dt

from trendsweep import (
    Window,
    moving_average,
    resample_annual,
    rolling_std,
    slice_window,
    snapshot_load,
)
from trendsweep.data import bundled_snapshot_path

snapshot = snapshot_load(bundled_snapshot_path())
print(f"snapshot vintage: {snapshot.vintage}")
print(f"series ids: {', '.join(snapshot.ids)}\n")

treasury = snapshot.series("treasury_10y")
print(f"treasury_10y: {len(treasury)} quarterly points, "
      f"{treasury.start} .. {treasury.end}")

# the sample window most common in the literature
red_window = Window(dt.date(1984, 1, 1), dt.date(2014, 12, 31))
red = slice_window(treasury, red_window)
print(f"1984-2014 window holds {len(red)} quarters")

annual = resample_annual(treasury, how="mean")
print("\nannual means (first five):")
for date, value in list(annual)[:5]:
    print(f"  {date.year}: {value:6.2f}pp")

smoothed = moving_average(treasury, 3.0)
print(f"\n3y moving average drops {len(treasury) - len(smoothed)} warm-up quarters; "
      f"first output {smoothed.start}")

vol = rolling_std(treasury, 5.0)
peak_value, peak_date = max(zip(vol.values, vol.dates))
print(f"5y rolling std peaks at {peak_date} ({peak_value:.2f}pp) - "
      "the early-1980s rate turbulence")
