"""How much the fitted trend depends on the chosen sample window.

Builds the real-rate series from the snapshot and fits the same linear
model over windows that differ only in their start year. A few years of
extra data at the start move the estimated slope by double-digit percents.
"""

import datetime as dt

from trendsweep import Window, build_series_bundle, fit_linear, snapshot_load
from trendsweep.data import bundled_snapshot_path

bundle = build_series_bundle(snapshot_load(bundled_snapshot_path()).all_series())
real_rate = bundle["real_rate"]

end = dt.date(2019, 12, 31)
print("real-rate trend slope by sample start year (all windows end 2019Q4):\n")
print(f"{'start':>6} {'n':>5} {'slope pp/yr':>12} {'r2':>6}")
fits = {}
for year in range(1980, 1990):
    fit = fit_linear(real_rate, Window(dt.date(year, 1, 1), end))
    fits[year] = fit
    print(f"{year:>6} {fit.n:>5} {fit.slope:>12.4f} {fit.r2:>6.3f}")

base, steepest = fits[1980], fits[1984]
pct = 100.0 * (steepest.slope - base.slope) / base.slope
print(f"\nstarting in 1984 instead of 1980 steepens the fitted decline by "
      f"{pct:.1f}% - the sample begins exactly at the real-rate peak.")
print("same regression, same data source; only the start date moved.")
