# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: GBM path construction and portfolio trial stats.

Mirrors _py.py; the pure-NumPy fallback is the reference for behavior.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt

cnp.import_array()


def gbm_paths(double s0, double mu, double sigma, double dt,
              cnp.ndarray[cnp.float64_t, ndim=2] normals):
    """Closed-form GBM paths from pre-drawn standard normals."""
    cdef Py_ssize_t n_paths = normals.shape[0]
    cdef Py_ssize_t horizon = normals.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n_paths, horizon + 1))
    cdef double drift = (mu - 0.5 * sigma * sigma) * dt
    cdef double vol = sigma * sqrt(dt)
    cdef double log_rel
    cdef Py_ssize_t i, k
    for i in range(n_paths):
        out[i, 0] = s0
        log_rel = 0.0
        for k in range(horizon):
            log_rel += drift + vol * normals[i, k]
            out[i, k + 1] = s0 * exp(log_rel)
    return out


def trial_stats(cnp.ndarray[cnp.float64_t, ndim=2] weights,
                cnp.ndarray[cnp.float64_t, ndim=1] mu_daily,
                cnp.ndarray[cnp.float64_t, ndim=2] cov_daily,
                double days_per_year=252.0):
    """Annualized return and risk for a block of weight vectors."""
    cdef Py_ssize_t n_trials = weights.shape[0]
    cdef Py_ssize_t n = weights.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ret = np.empty(n_trials)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] risk = np.empty(n_trials)
    cdef double r, var, row
    cdef Py_ssize_t t, i, j
    for t in range(n_trials):
        r = 0.0
        var = 0.0
        for i in range(n):
            r += weights[t, i] * mu_daily[i]
            row = 0.0
            for j in range(n):
                row += cov_daily[i, j] * weights[t, j]
            var += weights[t, i] * row
        ret[t] = r * days_per_year
        if var < 0.0:
            var = 0.0
        risk[t] = sqrt(var * days_per_year)
    return ret, risk
