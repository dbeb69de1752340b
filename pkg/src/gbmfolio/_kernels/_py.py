"""Pure-NumPy implementations of the hot kernels.

Used when the compiled extension is unavailable or when
GBMFOLIO_PURE_PYTHON is set. Must stay numerically equivalent to the
compiled versions (same formulas, same accumulation order per path).
"""

import numpy as np


def gbm_paths(s0, mu, sigma, dt, normals):
    """Closed-form GBM paths from pre-drawn standard normals.

    normals has shape (n_paths, horizon); the result has shape
    (n_paths, horizon + 1) with column 0 fixed at s0.
    """
    normals = np.asarray(normals, dtype=float)
    drift = (mu - 0.5 * sigma * sigma) * dt
    vol = sigma * np.sqrt(dt)
    log_rel = np.cumsum(drift + vol * normals, axis=1)
    out = np.empty((normals.shape[0], normals.shape[1] + 1))
    out[:, 0] = s0
    out[:, 1:] = s0 * np.exp(log_rel)
    return out


def trial_stats(weights, mu_daily, cov_daily, days_per_year=252.0):
    """Annualized return and risk for a block of weight vectors.

    weights: (n_trials, n_assets); mu_daily: (n_assets,) mean daily log
    returns; cov_daily: (n_assets, n_assets) sample covariance of daily
    log returns. Returns (ret_annual, risk_annual) arrays of length
    n_trials.
    """
    weights = np.asarray(weights, dtype=float)
    ret = weights @ np.asarray(mu_daily, dtype=float) * days_per_year
    var = np.einsum("ti,ij,tj->t", weights, np.asarray(cov_daily, dtype=float), weights)
    risk = np.sqrt(np.maximum(var, 0.0) * days_per_year)
    return ret, risk
