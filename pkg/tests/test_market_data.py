import datetime as dt

import numpy as np
import pytest

from gbmfolio.errors import DataError
from gbmfolio.market_data import (
    PriceSeries,
    align_panel,
    load_csv,
    normalize_base100,
    slice_period,
)
from gbmfolio.stats import simple_returns

from conftest import series, trading_days

HEADER = "Date,Open,High,Low,Close,Adj Close,Volume\n"


def write_csv(path, rows):
    with open(path, "w") as fh:
        fh.write(HEADER)
        for date, price in rows:
            fh.write(f"{date},{price},{price},{price},{price},{price},0\n")


class TestLoadCsv:
    def test_minimal_valid_file(self, tmp_path):
        path = tmp_path / "a.csv"
        write_csv(path, [("2019-01-02", "10.0"), ("2019-01-03", "10.5")])
        s = load_csv(path, "A")
        assert len(s) == 2
        assert s.ticker == "A"
        assert list(s.prices) == [10.0, 10.5]

    def test_unparsable_price_row_dropped(self, tmp_path):
        path = tmp_path / "a.csv"
        rows = [(f"2019-01-{d:02d}", "10.0") for d in (2, 3, 4, 7, 8)]
        rows[2] = ("2019-01-04", "null")
        write_csv(path, rows)
        assert len(load_csv(path, "A")) == 4

    def test_single_valid_row_rejected(self, tmp_path):
        path = tmp_path / "a.csv"
        write_csv(path, [("2019-01-02", "10.0")])
        with pytest.raises(DataError, match="insufficient"):
            load_csv(path, "A")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_csv(tmp_path / "nope.csv", "A")

    def test_malformed_header(self, tmp_path):
        path = tmp_path / "a.csv"
        path.write_text("foo,bar\n1,2\n")
        with pytest.raises(DataError, match="header"):
            load_csv(path, "A")

    def test_nonpositive_price_dropped_with_warning(self, tmp_path):
        path = tmp_path / "a.csv"
        write_csv(path, [("2019-01-02", "10.0"), ("2019-01-03", "-1.0"), ("2019-01-04", "11.0")])
        with pytest.warns(UserWarning, match="non-positive"):
            s = load_csv(path, "A")
        assert len(s) == 2

    def test_unsorted_rows_are_sorted(self, tmp_path):
        path = tmp_path / "a.csv"
        write_csv(path, [("2019-01-03", "11.0"), ("2019-01-02", "10.0")])
        s = load_csv(path, "A")
        assert s.dates[0] < s.dates[1]
        assert list(s.prices) == [10.0, 11.0]


class TestPriceSeriesInvariants:
    def test_rejects_short(self):
        with pytest.raises(DataError):
            series([10.0])

    def test_rejects_nonpositive(self):
        with pytest.raises(DataError):
            series([10.0, 0.0])

    def test_rejects_duplicate_dates(self):
        days = trading_days(2)
        with pytest.raises(DataError):
            PriceSeries("A", (days[0], days[0]), np.array([1.0, 2.0]))


class TestAlignPanel:
    def test_identical_dates(self):
        a, b = series([1, 2, 3], "A"), series([4, 5, 6], "B")
        panel = align_panel([a, b])
        assert panel.tickers == ("A", "B")
        assert panel.dates == a.dates
        assert panel.matrix.shape == (3, 2)

    def test_intersection(self):
        days = trading_days(4)
        a = PriceSeries("A", days[:3], np.array([1.0, 2.0, 3.0]))
        b = PriceSeries("B", days[1:], np.array([4.0, 5.0, 6.0]))
        panel = align_panel([a, b])
        assert panel.dates == days[1:3]
        assert list(panel.matrix[:, 0]) == [2.0, 3.0]
        assert list(panel.matrix[:, 1]) == [4.0, 5.0]

    def test_disjoint_dates(self):
        a = series([1, 2], start=dt.date(2019, 1, 2))
        b = series([1, 2], start=dt.date(2020, 1, 2))
        with pytest.raises(DataError, match="no common dates"):
            align_panel([a, b])

    def test_order_invariant_up_to_columns(self, rng):
        days = trading_days(30)
        cols = [PriceSeries(f"T{i}", days, rng.uniform(1, 10, 30)) for i in range(4)]
        p1 = align_panel(cols)
        p2 = align_panel(cols[::-1])
        assert p1.dates == p2.dates
        for i, t in enumerate(p1.tickers):
            j = p2.tickers.index(t)
            assert np.array_equal(p1.matrix[:, i], p2.matrix[:, j])
        assert set(p1.dates) <= set(cols[0].dates)


class TestNormalizeBase100:
    def test_paper_rule(self):
        out = normalize_base100(series([20, 25, 30]))
        assert list(out.prices) == [100.0, 125.0, 150.0]

    def test_identity(self):
        out = normalize_base100(series([100, 100]))
        assert list(out.prices) == [100.0, 100.0]

    def test_derived_pair(self):
        out = normalize_base100(series([8, 2]))
        assert list(out.prices) == [100.0, 25.0]

    def test_idempotent(self, rng):
        s = series(rng.uniform(3, 50, 40))
        once = normalize_base100(s)
        twice = normalize_base100(once)
        assert np.array_equal(once.prices, twice.prices)

    def test_preserves_simple_returns(self, rng):
        s = series(rng.uniform(3, 50, 40))
        before = simple_returns(s).values
        after = simple_returns(normalize_base100(s)).values
        assert np.allclose(before, after, rtol=1e-12)


class TestSlicePeriod:
    def test_full_range_identity(self):
        s = series([1, 2, 3, 4, 5])
        out = slice_period(s, s.dates[0], s.dates[-1])
        assert out.dates == s.dates
        assert np.array_equal(out.prices, s.prices)

    def test_partial(self):
        s = series([1, 2, 3, 4, 5])
        out = slice_period(s, s.dates[1], s.dates[3])
        assert len(out) == 3
        assert list(out.prices) == [2.0, 3.0, 4.0]

    def test_empty_window(self):
        s = series([1, 2, 3])
        with pytest.raises(DataError):
            slice_period(s, dt.date(2030, 1, 1), dt.date(2030, 2, 1))
