"""Shared test helpers: series builders and a no-network guard."""

from __future__ import annotations

import datetime as dt
import socket

import pytest

from trendsweep.series import Frequency, TimeSeries, Unit

QUARTER_MONTHS = (1, 4, 7, 10)


def quarterly_dates(start_year: int, n: int, start_quarter: int = 0) -> list[dt.date]:
    dates = []
    year, quarter = start_year, start_quarter
    for _ in range(n):
        dates.append(dt.date(year, QUARTER_MONTHS[quarter], 1))
        quarter += 1
        if quarter == 4:
            quarter = 0
            year += 1
    return dates


def make_quarterly(
    values,
    start_year: int = 1980,
    series_id: str = "test",
    unit: Unit = Unit.PERCENT_POINTS,
) -> TimeSeries:
    values = list(values)
    return TimeSeries.from_pairs(
        series_id,
        Frequency.QUARTERLY,
        list(zip(quarterly_dates(start_year, len(values)), values)),
        unit,
    )


def make_annual(
    values,
    start_year: int = 1980,
    series_id: str = "test",
    unit: Unit = Unit.PERCENT_POINTS,
) -> TimeSeries:
    values = list(values)
    dates = [dt.date(start_year + i, 1, 1) for i in range(len(values))]
    return TimeSeries.from_pairs(series_id, Frequency.ANNUAL, list(zip(dates, values)), unit)


@pytest.fixture
def no_network(monkeypatch):
    """Fail the test if anything opens a network connection."""

    def _blocked(*args, **kwargs):
        raise AssertionError("network access attempted during offline test")

    monkeypatch.setattr(socket.socket, "connect", _blocked)
    monkeypatch.setattr(socket, "create_connection", _blocked)
    return None
