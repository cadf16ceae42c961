"""Optional: render the four figures from a report bundle with matplotlib.

Not part of the tested surface. Reads the tidy CSVs emitted by
``trendsweep build`` (run it first, or pass --reports DIR) and writes PNGs
next to them.

Usage: python demos/plot_figures.py [--reports reports]
"""

import argparse
import csv
import datetime as dt
import sys
from collections import defaultdict
from pathlib import Path

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib not installed; `pip install trendsweep[plots]`")


def read_groups(path: Path):
    groups = defaultdict(list)
    with path.open(newline="") as fh:
        for row in csv.DictReader(fh):
            groups[(row["series"], row["facet"])].append(
                (dt.date.fromisoformat(row["date"]), float(row["value"]))
            )
    return groups


def plot_series_with_trend(path: Path, out: Path, title: str, scale=1.0):
    groups = read_groups(path)
    fig, axes = plt.subplots(
        1, len({s for s, _ in groups}), figsize=(6 * len({s for s, _ in groups}), 4)
    )
    series_names = sorted({s for s, _ in groups})
    if len(series_names) == 1:
        axes = [axes]
    for ax, name in zip(axes, series_names):
        obs = groups[(name, "observed")]
        ax.plot([d for d, _ in obs], [scale * v for _, v in obs], lw=1, label=name)
        trend = groups.get((name, "trend"), [])
        if trend:
            ax.plot(
                [d for d, _ in trend],
                [scale * v for _, v in trend],
                lw=2,
                color="crimson",
                label="trend",
            )
        ax.set_title(name)
        ax.legend(frameon=False)
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    print(f"wrote {out}")


def plot_sweep(path: Path, out: Path):
    groups = read_groups(path)
    name = next(iter({s for s, _ in groups}))
    fig, ax = plt.subplots(figsize=(6, 4))
    pct = groups[(name, "pct_change")]
    ax.scatter([d.year for d, _ in pct], [v for _, v in pct], zorder=3)
    quad = groups.get((name, "pct_change_quadratic"), [])
    if quad:
        xs = [d.year + (d.month - 1) / 12 for d, _ in quad]
        ax.plot(xs, [v for _, v in quad], color="gray", lw=1.5)
    ax.axhline(0, color="k", lw=0.5)
    ax.set_xlabel("sample start year")
    ax.set_ylabel("% change in trend slope vs 1980")
    ax.set_title(f"trend sensitivity: {name}")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    print(f"wrote {out}")


def plot_influence(path: Path, out: Path):
    groups = read_groups(path)
    fig, axes = plt.subplots(1, 2, figsize=(12, 4))
    vol = groups[("real_rate", "volatility")]
    axes[0].plot([d for d, _ in vol], [v for _, v in vol], lw=1)
    axes[0].set_title("5y rolling volatility of the real rate")
    cooks = groups[("real_rate", "cooks_distance")]
    axes[1].bar([d for d, _ in cooks], [v for _, v in cooks], width=80)
    axes[1].set_title("Cook's distance per quarter")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    print(f"wrote {out}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reports", default="reports")
    args = parser.parse_args()
    reports = Path(args.reports)
    if not (reports / "fig1_real_rate.csv").exists():
        sys.exit(f"no figure data under {reports}; run `trendsweep build --out {reports}` first")
    plot_series_with_trend(
        reports / "fig1_real_rate.csv", reports / "fig1_real_rate.png", "real interest rate (pp)"
    )
    plot_series_with_trend(
        reports / "fig2_cost_of_capital.csv",
        reports / "fig2_cost_of_capital.png",
        "cost of capital (pp)",
    )
    plot_series_with_trend(
        reports / "fig3_profit_markup.csv",
        reports / "fig3_profit_markup.png",
        "profit share and implied markup",
    )
    plot_influence(reports / "fig4_influence.csv", reports / "fig4_influence.png")
    for name in ("real_rate", "cost_of_capital", "profit_share", "markup"):
        plot_sweep(reports / f"sweep_{name}.csv", reports / f"sweep_{name}.png")


if __name__ == "__main__":
    main()
