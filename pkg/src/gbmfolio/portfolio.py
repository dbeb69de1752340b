"""Portfolio construction, random-weight Monte Carlo optimization, and
ranked grouping of an asset universe.

Portfolios are buy-and-hold: initial positions are fixed by the weight
vector and never rebalanced. Risk uses the full sample covariance matrix
of daily log returns (Markowitz form); return is the weighted mean of
per-asset daily mean log returns, annualized by 252.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DataError, NumericError
from .market_data import TRADING_DAYS_PER_YEAR, PriceSeries
from .stats import asset_stats, sharpe_ratio

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class Weights:
    """Nonnegative allocation fractions summing to 1."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if len(values) == 0:
            raise DataError("weights cannot be empty")
        if np.any(values < 0):
            raise DataError("weights must be nonnegative")
        if abs(values.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise DataError(f"weights sum to {values.sum()}, expected 1")

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class Portfolio:
    tickers: tuple
    weights: Weights
    capital: float
    value_series: PriceSeries

    def __post_init__(self):
        if len(self.tickers) != len(self.weights):
            raise DataError("tickers and weights length mismatch")


@dataclass(frozen=True)
class PortfolioStats:
    return_annual: float
    risk_annual: float
    sharpe: float


@dataclass(frozen=True)
class PortfolioGroup:
    """Universe partitioned into equal groups, best metric values first."""

    metric: str  # "return", "risk" or "sharpe"
    groups: tuple  # tuple of tuples of tickers
    direction: str = "descending"


def portfolio_value_series(panel, weights, capital, name="portfolio"):
    """Buy-and-hold value series: capital split by weight on day 0."""
    if len(weights) != len(panel.tickers):
        raise DataError("weights do not match panel tickers")
    normalized = panel.matrix / panel.matrix[0, :]
    values = capital * (normalized @ weights.values)
    return PriceSeries(name, panel.dates, values)


def random_weights(n_assets, rng):
    """Independent uniforms normalized by their sum."""
    if n_assets < 1:
        raise DataError("need at least one asset")
    u = rng.random(n_assets)
    total = u.sum()
    if total == 0.0:  # probability zero, but keep the contract total
        u = np.full(n_assets, 1.0)
        total = float(n_assets)
    return Weights(u / total)


def _calibrate(panel):
    """Mean vector and sample covariance of daily log returns."""
    if panel.matrix.shape[0] < 3:
        raise DataError("panel needs at least 3 dates for covariance")
    log_rets = np.diff(np.log(panel.matrix), axis=0)
    mu_daily = log_rets.mean(axis=0)
    cov_daily = np.cov(log_rets, rowvar=False, ddof=1).reshape(len(panel.tickers), -1)
    return mu_daily, cov_daily


def portfolio_stats(panel, weights, risk_free):
    """Annualized return/risk/Sharpe for one weight vector."""
    if len(weights) != len(panel.tickers):
        raise DataError("weights do not match panel tickers")
    mu_daily, cov_daily = _calibrate(panel)
    ret, risk = _kernels.trial_stats(
        weights.values[None, :], mu_daily, cov_daily, float(TRADING_DAYS_PER_YEAR)
    )
    return PortfolioStats(float(ret[0]), float(risk[0]), sharpe_ratio(ret[0], risk[0], risk_free))


def optimize_max_sharpe(panel, n_trials, seed, risk_free, block_size=8192):
    """Best Sharpe among random-weight trials plus the equal-weight baseline.

    Trial 0 is always the equal-weight portfolio, so the result can never
    be worse than it. Trial i >= 1 draws its weights from a stream seeded
    by (seed, i): deterministic and order-independent.
    """
    if n_trials < 1:
        raise DataError("need at least one trial")
    n = len(panel.tickers)
    mu_daily, cov_daily = _calibrate(panel)

    best_sharpe = -math.inf
    best_weights = None
    best_ret = best_risk = 0.0
    trial = 0
    while trial <= n_trials:
        count = min(block_size, n_trials + 1 - trial)
        block = np.empty((count, n))
        for k in range(count):
            i = trial + k
            if i == 0:
                block[k] = 1.0 / n
            else:
                block[k] = random_weights(n, np.random.default_rng([seed, i])).values
        ret, risk = _kernels.trial_stats(block, mu_daily, cov_daily, float(TRADING_DAYS_PER_YEAR))
        ok = risk > 0
        if ok.any():
            sharpe = np.where(ok, (ret - risk_free) / np.where(ok, risk, 1.0), -math.inf)
            k = int(np.argmax(sharpe))
            if sharpe[k] > best_sharpe:
                best_sharpe = float(sharpe[k])
                best_weights = block[k].copy()
                best_ret, best_risk = float(ret[k]), float(risk[k])
        trial += count

    if best_weights is None:
        raise NumericError("undefined Sharpe for every trial (zero variance)")
    return Weights(best_weights), PortfolioStats(best_ret, best_risk, best_sharpe)


def _metric_value(stats, metric):
    if metric == "return":
        return stats.return_annual
    if metric == "risk":
        return stats.risk_annual
    if metric == "sharpe":
        if stats.sharpe is None:
            raise NumericError(f"{stats.ticker}: undefined Sharpe, cannot rank")
        return stats.sharpe
    raise DataError(f"unknown metric {metric!r}")


def rank_and_group(universe, metric, risk_free, group_count=6, group_size=13):
    """Sort the universe descending by a per-asset metric and chunk it.

    Ties break by ticker so the grouping is deterministic. The universe
    size must equal group_count * group_size.
    """
    n = len(universe.tickers)
    if n != group_count * group_size:
        raise DataError(f"universe of {n} tickers does not split into {group_count}x{group_size}")
    per_asset = [asset_stats(universe.column(t), risk_free) for t in universe.tickers]
    ranked = sorted(per_asset, key=lambda s: (-_metric_value(s, metric), s.ticker))
    groups = tuple(
        tuple(s.ticker for s in ranked[g * group_size : (g + 1) * group_size])
        for g in range(group_count)
    )
    return PortfolioGroup(metric, groups)
