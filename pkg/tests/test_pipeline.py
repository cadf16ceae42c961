"""Tests for the economic series construction pipeline."""

import datetime as dt
import math

import numpy as np
import pytest

from trendsweep.errors import DataError, DomainError
from trendsweep.pipeline import (
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
from trendsweep.series import Frequency, TimeSeries, Unit, resample_annual

from conftest import make_annual, make_quarterly


def pp_annual(values, start_year=1980, series_id="x"):
    return make_annual(values, start_year=start_year, series_id=series_id)


class TestAnnualToQuarterly:
    def test_broadcast_four_copies(self):
        s = make_annual([1.0, 2.0], start_year=1990)
        q = annual_to_quarterly(s)
        assert q.freq is Frequency.QUARTERLY
        assert len(q) == 8
        assert q.values == (1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0)
        assert q.dates[1] == dt.date(1990, 4, 1)

    def test_annual_means_preserved_exactly(self):
        rng = np.random.default_rng(6)
        s = make_annual(rng.normal(size=10), start_year=1990)
        back = resample_annual(annual_to_quarterly(s))
        np.testing.assert_array_equal(back.values_array(), s.values_array())

    def test_non_annual_rejected(self):
        with pytest.raises(DomainError, match="not-annual"):
            annual_to_quarterly(make_quarterly([1.0, 2.0]))


class TestExpectedInflation:
    def test_constant_growth_rate(self):
        levels = [100.0 * 1.02**i for i in range(8)]
        s = make_annual(levels, series_id="p", unit=Unit.INDEX)
        nu = expected_inflation(s)
        expected = 100.0 * math.log(1.02)
        assert len(nu) == 5  # one lag year + 3y warm-up
        for v in nu.values:
            assert v == pytest.approx(expected, rel=1e-12)
        assert nu.unit is Unit.PERCENT_POINTS

    def test_constant_index_zero(self):
        s = make_annual([50.0] * 6, unit=Unit.INDEX)
        nu = expected_inflation(s)
        assert all(v == pytest.approx(0.0, abs=1e-14) for v in nu.values)

    def test_hand_moving_average(self):
        # simple growths of 1%, 2%, 3%: nu at the third growth year is the
        # mean of the three log growths
        levels = [100.0, 101.0, 101.0 * 1.02, 101.0 * 1.02 * 1.03]
        s = make_annual(levels, start_year=2000, unit=Unit.INDEX)
        nu = expected_inflation(s)
        hand = 100.0 * (math.log(1.01) + math.log(1.02) + math.log(1.03)) / 3.0
        assert nu.dates == (dt.date(2003, 1, 1),)
        assert nu.values[0] == pytest.approx(hand, rel=1e-12)
        assert hand == pytest.approx(1.9770586796964082, rel=1e-12)

    def test_simple_growth_flag(self):
        levels = [100.0 * 1.02**i for i in range(8)]
        s = make_annual(levels, unit=Unit.INDEX)
        nu = expected_inflation(s, growth="simple")
        for v in nu.values:
            assert v == pytest.approx(2.0, rel=1e-12)

    def test_quarterly_index_year_over_year(self):
        # quarterly index growing 1% per quarter: yoy log growth is constant
        levels = [100.0 * 1.01**i for i in range(24)]
        s = make_quarterly(levels, unit=Unit.INDEX)
        nu = expected_inflation(s)
        expected = 100.0 * 4.0 * math.log(1.01)
        for v in nu.values:
            assert v == pytest.approx(expected, rel=1e-12)

    def test_nonpositive_rejected(self):
        s = make_annual([100.0, -1.0, 100.0], unit=Unit.INDEX)
        with pytest.raises(DomainError, match="nonpositive-index"):
            expected_inflation(s)

    def test_unknown_growth(self):
        with pytest.raises(DomainError, match="unknown-growth"):
            expected_inflation(make_annual([1.0, 2.0], unit=Unit.INDEX), growth="geo")


class TestRealRate:
    def test_pointwise_subtraction(self):
        i = pp_annual([5.0, 6.0])
        nu = pp_annual([2.0, 2.5])
        rr = real_rate(i, nu)
        assert rr.values == (3.0, 3.5)
        assert rr.series_id == "real_rate"

    def test_zero_inflation_identity(self):
        i = pp_annual([5.0, 6.0, 7.0])
        nu = pp_annual([0.0, 0.0, 0.0])
        assert real_rate(i, nu).values == i.values

    def test_unit_checked(self):
        i = make_annual([5.0], unit=Unit.RATIO)
        nu = pp_annual([2.0])
        with pytest.raises(DomainError, match="unit-mismatch"):
            real_rate(i, nu)


def make_inputs(i=6.0, rd=8.0, d=0.4, nu=2.0, delta=6.0, tau=0.3, z=0.5, n=3):
    return CapitalCostInputs(
        treasury_yield=pp_annual([i] * n, series_id="i"),
        bond_yield=pp_annual([rd] * n, series_id="rd"),
        debt_share=make_annual([d] * n, series_id="d", unit=Unit.RATIO),
        expected_inflation=pp_annual([nu] * n, series_id="nu"),
        depreciation=pp_annual([delta] * n, series_id="delta"),
        tax_rate=make_annual([tau] * n, series_id="tau", unit=Unit.RATIO),
        allowance_pv=make_annual([z] * n, series_id="z", unit=Unit.RATIO),
    )


class TestCostOfFinance:
    def test_all_debt(self):
        rho = cost_of_finance(make_inputs(d=1.0))
        assert all(v == pytest.approx(8.0) for v in rho.values)

    def test_all_equity(self):
        rho = cost_of_finance(make_inputs(d=0.0))
        assert all(v == pytest.approx(6.0 + 5.0) for v in rho.values)

    def test_hand_weighted_average(self):
        rho = cost_of_finance(make_inputs(i=6.0, rd=8.0, d=0.4))
        assert all(v == pytest.approx(0.4 * 8.0 + 0.6 * 11.0) for v in rho.values)

    def test_convex_combination_property(self):
        rng = np.random.default_rng(14)
        for _ in range(25):
            i, rd = rng.uniform(0, 12, size=2)
            d = float(rng.uniform(0, 1))
            rho = cost_of_finance(make_inputs(i=i, rd=rd, d=d)).values[0]
            re = i + 5.0
            assert min(rd, re) - 1e-12 <= rho <= max(rd, re) + 1e-12

    def test_debt_share_range_checked(self):
        with pytest.raises(DomainError, match="debt-share-range"):
            cost_of_finance(make_inputs(d=1.2))


class TestCostOfCapital:
    def test_no_tax_case(self):
        rc = cost_of_capital(make_inputs(tau=0.0))
        rho = cost_of_finance(make_inputs(tau=0.0)).values[0]
        assert all(v == pytest.approx(rho - 2.0 + 6.0) for v in rc.values)

    def test_full_expensing_cancels_tax(self):
        rc = cost_of_capital(make_inputs(z=1.0, tau=0.3))
        rho = cost_of_finance(make_inputs()).values[0]
        assert all(v == pytest.approx(rho - 2.0 + 6.0) for v in rc.values)

    def test_hand_value(self):
        # (rho - nu + delta)(1 - z tau)/(1 - tau) with rho=8, nu=2, delta=6
        rc = cost_of_capital(make_inputs(i=2.0, rd=9.0, d=0.5, tau=0.3, z=0.5))
        rho = cost_of_finance(make_inputs(i=2.0, rd=9.0, d=0.5)).values[0]
        assert rho == pytest.approx(8.0)
        assert all(v == pytest.approx(12.0 * 0.85 / 0.7) for v in rc.values)
        assert rc.values[0] == pytest.approx(14.571428571428571)

    def test_tax_rate_unity_rejected(self):
        with pytest.raises(DomainError, match="tax-rate-unity"):
            cost_of_capital(make_inputs(tau=1.0))

    def test_allowance_range_checked(self):
        with pytest.raises(DomainError, match="allowance-range"):
            cost_of_capital(make_inputs(z=1.3))

    def test_invariance_properties(self):
        # invariant to z when tau=0 and to tau when z=1
        for z in (0.0, 0.4, 1.0):
            rc = cost_of_capital(make_inputs(tau=0.0, z=z))
            assert rc.values[0] == pytest.approx(
                cost_of_capital(make_inputs(tau=0.0, z=0.7)).values[0]
            )
        for tau in (0.0, 0.2, 0.5):
            rc = cost_of_capital(make_inputs(z=1.0, tau=tau))
            assert rc.values[0] == pytest.approx(
                cost_of_capital(make_inputs(z=1.0, tau=0.1)).values[0]
            )


def make_accounts(y=10.0, wl=6.0, k=10.0, taxes=0.5, emp=100.0, n=3):
    return AccountsBundle(
        gross_value_added=make_annual([y] * n, series_id="y", unit=Unit.DOLLARS),
        compensation=make_annual([wl] * n, series_id="wl", unit=Unit.DOLLARS),
        capital_stock=make_annual([k] * n, series_id="k", unit=Unit.DOLLARS),
        production_taxes=make_annual([taxes] * n, series_id="taxes", unit=Unit.DOLLARS),
        employment=make_annual([emp] * n, series_id="emp", unit=Unit.COUNT),
        capital_price_index=make_annual([100.0] * n, series_id="p", unit=Unit.INDEX),
    )


class TestProfitShare:
    def test_hand_residual(self):
        # WL/Y = 0.6, Rc*K/Y = 0.25, no taxes -> 0.15
        acct = make_accounts(y=10.0, wl=6.0, k=10.0, taxes=0.5)
        rc = pp_annual([25.0] * 3, series_id="rc")
        pi = profit_share(acct, rc, include_production_taxes=False)
        assert all(v == pytest.approx(0.15) for v in pi.values)

    def test_production_tax_flag(self):
        acct = make_accounts(y=10.0, wl=6.0, k=10.0, taxes=0.5)
        rc = pp_annual([25.0] * 3, series_id="rc")
        with_tax = profit_share(acct, rc, include_production_taxes=True)
        assert all(v == pytest.approx(0.10) for v in with_tax.values)

    def test_labor_equal_output_boundary(self):
        acct = make_accounts(y=10.0, wl=10.0, k=10.0, taxes=0.5)
        rc = pp_annual([10.0] * 3, series_id="rc")
        pi = profit_share(acct, rc)
        assert all(v == pytest.approx(-0.15) for v in pi.values)  # negative allowed

    def test_accounting_identity(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            y = float(rng.uniform(5, 50))
            acct = make_accounts(
                y=y,
                wl=float(rng.uniform(0.4, 0.7) * y),
                k=float(rng.uniform(0.8, 2.5) * y),
                taxes=float(rng.uniform(0.01, 0.1) * y),
            )
            rc = pp_annual([float(rng.uniform(5, 30))] * 3, series_id="rc")
            shares = value_added_shares(acct, rc)
            total = (
                shares["labor"].values_array()
                + shares["capital"].values_array()
                + shares["production_taxes"].values_array()
                + shares["profit"].values_array()
            )
            np.testing.assert_allclose(total, 1.0, rtol=0, atol=1e-12)


class TestMarkup:
    def test_zero_profit_identity(self):
        m = markup(make_annual([0.0] * 3, unit=Unit.RATIO))
        assert all(v == 1.0 for v in m.values)

    def test_hand_values(self):
        m = markup(make_annual([0.15, -0.1], unit=Unit.RATIO))
        assert m.values[0] == pytest.approx(2.0 / 1.85)
        assert m.values[0] == pytest.approx(1.0810810810810811)
        assert m.values[1] == pytest.approx(2.0 / 2.1)
        assert m.values[1] == pytest.approx(0.9523809523809523)

    def test_pole_rejected(self):
        with pytest.raises(DomainError, match="markup-pole"):
            markup(make_annual([0.5, 2.0], unit=Unit.RATIO))

    def test_strictly_increasing_in_profit(self):
        grid = np.linspace(-1.5, 1.9, 50)
        m = markup(make_annual(grid, unit=Unit.RATIO))
        diffs = np.diff(m.values_array())
        assert np.all(diffs > 0)


class TestDollarAggregates:
    def test_profit_dollars(self):
        pi = make_annual([0.1, 0.0], unit=Unit.RATIO)
        y = make_annual([10e12, 10e12], unit=Unit.DOLLARS)
        pd = profit_dollars(pi, y)
        assert pd.values == (1e12, 0.0)
        assert pd.unit is Unit.DOLLARS

    def test_profit_per_worker(self):
        pd = make_annual([300e9], unit=Unit.DOLLARS)
        emp = make_annual([100e6], unit=Unit.COUNT)
        assert profit_per_worker(pd, emp).values == (3000.0,)

    def test_nonpositive_employment_rejected(self):
        pd = make_annual([300e9], unit=Unit.DOLLARS)
        emp = TimeSeries.from_pairs(
            "emp", Frequency.ANNUAL, [(dt.date(1990, 1, 1), 0.0)], Unit.COUNT
        )
        with pytest.raises(DomainError, match="nonpositive-employment"):
            profit_per_worker(pd, emp)


class TestAccountsValidation:
    def test_nonpositive_accounts_rejected(self):
        with pytest.raises(DomainError, match="nonpositive-accounts"):
            make_accounts(y=-1.0)


class TestBuildSeriesBundle:
    def test_missing_series_named(self):
        with pytest.raises(DataError, match="missing-series.*treasury_10y"):
            build_series_bundle({})

    def test_deterministic_on_same_inputs(self):
        from trendsweep.data import bundled_snapshot_path
        from trendsweep.ingestion import snapshot_load

        raw = snapshot_load(bundled_snapshot_path()).all_series()
        b1 = build_series_bundle(raw)
        b2 = build_series_bundle(raw)
        for key in b1:
            assert b1[key].dates == b2[key].dates
            assert b1[key].values == b2[key].values

    def test_bundle_contents_and_frequencies(self):
        from trendsweep.data import bundled_snapshot_path
        from trendsweep.ingestion import snapshot_load

        raw = snapshot_load(bundled_snapshot_path()).all_series()
        bundle = build_series_bundle(raw)
        for key in (
            "real_rate",
            "cost_of_finance",
            "cost_of_capital",
            "profit_share",
            "markup",
            "profit_dollars",
            "expected_inflation",
        ):
            assert bundle[key].freq is Frequency.QUARTERLY, key
        assert bundle["employment"].freq is Frequency.ANNUAL
        # finance cost is a convex combination of its two legs
        rho = bundle["cost_of_finance"].values_array()
        i = annual = None  # noqa: F841 - readability
        treasury = raw["treasury_10y"]
        baa = raw["baa_yield"]
        from trendsweep.series import align

        t_al, b_al, rho_al = align(treasury, baa, bundle["cost_of_finance"])
        lo = np.minimum(b_al.values_array(), t_al.values_array() + 5.0)
        hi = np.maximum(b_al.values_array(), t_al.values_array() + 5.0)
        r = rho_al.values_array()
        assert np.all(r >= lo - 1e-9) and np.all(r <= hi + 1e-9)
