import datetime as dt

import numpy as np
import pytest

from gbmfolio.market_data import PriceSeries


def trading_days(n, start=dt.date(2019, 1, 2)):
    """n consecutive weekday labels."""
    days = []
    d = start
    while len(days) < n:
        if d.weekday() < 5:
            days.append(d)
        d += dt.timedelta(days=1)
    return tuple(days)


def series(prices, ticker="TST", start=dt.date(2019, 1, 2)):
    prices = np.asarray(prices, dtype=float)
    return PriceSeries(ticker, trading_days(len(prices), start), prices)


@pytest.fixture
def rng():
    return np.random.default_rng(20260825)
