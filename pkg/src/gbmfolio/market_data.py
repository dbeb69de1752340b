"""Loading, validation, alignment and windowing of daily price histories.

Prices come from CSV files in the common daily-export layout
(Date, Open, High, Low, Close, Adj Close, Volume); the adjusted close
is used as the price. Dates are opaque ordered labels: whatever trading
days the data contains define the calendar.
"""

import csv
import datetime as dt
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

TRADING_DAYS_PER_YEAR = 252


@dataclass(frozen=True)
class TradingCalendar:
    """Trading-day conventions: annualization factor and horizon lengths."""

    days_per_year: int = TRADING_DAYS_PER_YEAR
    horizon_days: dict = field(
        default_factory=lambda: {
            "1w": 5,
            "2w": 10,
            "1m": 21,
            "6m": 126,
            "1y": 247,
        }
    )


@dataclass(frozen=True)
class PriceSeries:
    """One asset's dated daily closing prices.

    Dates are strictly increasing, prices are positive and finite,
    and there are at least two rows.
    """

    ticker: str
    dates: tuple
    prices: np.ndarray

    def __post_init__(self):
        prices = np.asarray(self.prices, dtype=float)
        prices.flags.writeable = False
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "dates", tuple(self.dates))
        if len(self.dates) != len(prices):
            raise DataError(f"{self.ticker}: dates and prices length mismatch")
        if len(prices) < 2:
            raise DataError(f"{self.ticker}: insufficient data (need >= 2 rows)")
        if not np.all(np.isfinite(prices)) or np.any(prices <= 0):
            raise DataError(f"{self.ticker}: prices must be positive and finite")
        for a, b in zip(self.dates, self.dates[1:]):
            if not a < b:
                raise DataError(f"{self.ticker}: dates not strictly increasing")

    def __len__(self):
        return len(self.prices)


@dataclass(frozen=True)
class PricePanel:
    """Multiple assets on a shared trading-day axis, no missing cells."""

    tickers: tuple
    dates: tuple
    matrix: np.ndarray  # shape (n_dates, n_tickers)

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "tickers", tuple(self.tickers))
        object.__setattr__(self, "dates", tuple(self.dates))
        if matrix.shape != (len(self.dates), len(self.tickers)):
            raise DataError("panel matrix shape does not match axes")
        if not np.all(np.isfinite(matrix)) or np.any(matrix <= 0):
            raise DataError("panel prices must be positive and finite")

    def column(self, ticker):
        """The PriceSeries of one panel column."""
        j = self.tickers.index(ticker)
        return PriceSeries(ticker, self.dates, self.matrix[:, j])


def _parse_date(text):
    return dt.date.fromisoformat(text.strip())


def load_csv(path, ticker):
    """Load one asset's daily prices from a CSV export.

    The file needs a header with a date column and an adjusted-close
    column ("Adj Close", falling back to "Close"). Rows with empty or
    non-numeric prices are dropped; non-positive prices are dropped with
    a warning; duplicate dates keep the first occurrence.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open price file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        cols = {name.strip().lower(): i for i, name in enumerate(header)}
        if "date" not in cols:
            raise DataError(f"{path}: malformed header, no Date column")
        if "adj close" in cols:
            price_col = cols["adj close"]
        elif "close" in cols:
            price_col = cols["close"]
        else:
            raise DataError(f"{path}: malformed header, no Adj Close/Close column")
        date_col = cols["date"]

        rows = []
        for row in reader:
            if len(row) <= max(date_col, price_col):
                continue
            try:
                date = _parse_date(row[date_col])
                price = float(row[price_col])
            except ValueError:
                continue
            if not np.isfinite(price) or price <= 0:
                warnings.warn(f"{ticker}: dropping non-positive price on {row[date_col]}")
                continue
            rows.append((date, price))

    rows.sort(key=lambda r: r[0])
    deduped = []
    for date, price in rows:
        if deduped and deduped[-1][0] == date:
            warnings.warn(f"{ticker}: duplicate date {date}, keeping first")
            continue
        deduped.append((date, price))
    if len(deduped) < 2:
        raise DataError(f"{ticker}: insufficient data in {path}")
    dates, prices = zip(*deduped)
    return PriceSeries(ticker, dates, np.array(prices))


def align_panel(series_list):
    """Inner-join a list of PriceSeries onto their common dates."""
    if not series_list:
        raise DataError("align_panel needs at least one series")
    common = set(series_list[0].dates)
    for s in series_list[1:]:
        common &= set(s.dates)
    if not common:
        raise DataError("no common dates across series")
    dates = tuple(sorted(common))
    matrix = np.empty((len(dates), len(series_list)))
    for j, s in enumerate(series_list):
        index = {d: i for i, d in enumerate(s.dates)}
        matrix[:, j] = [s.prices[index[d]] for d in dates]
    return PricePanel(tuple(s.ticker for s in series_list), dates, matrix)


def normalize_base100(series):
    """Rescale so the first price is exactly 100, preserving all returns."""
    return PriceSeries(series.ticker, series.dates, series.prices / series.prices[0] * 100.0)


def slice_period(series, start, end):
    """Rows with start <= date <= end; error if fewer than 2 remain."""
    if start > end:
        raise DataError(f"{series.ticker}: start {start} after end {end}")
    keep = [i for i, d in enumerate(series.dates) if start <= d <= end]
    if len(keep) < 2:
        raise DataError(f"{series.ticker}: window {start}..{end} has fewer than 2 rows")
    dates = tuple(series.dates[i] for i in keep)
    return PriceSeries(series.ticker, dates, series.prices[keep])


def slice_panel(panel, start, end):
    """slice_period applied to a whole panel."""
    if start > end:
        raise DataError(f"start {start} after end {end}")
    keep = [i for i, d in enumerate(panel.dates) if start <= d <= end]
    if len(keep) < 2:
        raise DataError(f"window {start}..{end} has fewer than 2 rows")
    dates = tuple(panel.dates[i] for i in keep)
    return PricePanel(panel.tickers, dates, panel.matrix[keep, :])
