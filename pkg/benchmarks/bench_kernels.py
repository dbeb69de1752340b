"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from gbmfolio._kernels import _py

try:
    from gbmfolio._kernels import _core
except ImportError:
    _core = None


def timeit(fn, repeats=5):
    fn()
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)

    print("gbm_paths: 1000 paths x 247 steps")
    normals = rng.standard_normal((1000, 247))
    t_py = timeit(lambda: _py.gbm_paths(100.0, 0.0004, 0.01, 1.0, normals))
    print(f"  numpy fallback : {t_py * 1e3:8.2f} ms")
    if _core is not None:
        t_cy = timeit(lambda: _core.gbm_paths(100.0, 0.0004, 0.01, 1.0, normals))
        print(f"  cython         : {t_cy * 1e3:8.2f} ms   ({t_py / t_cy:.2f}x)")
        a = _py.gbm_paths(100.0, 0.0004, 0.01, 1.0, normals)
        b = _core.gbm_paths(100.0, 0.0004, 0.01, 1.0, normals)
        print(f"  max rel diff   : {np.max(np.abs(a - b) / b):.2e}")

    print("trial_stats: 100000 trials x 13 assets")
    n = 13
    weights = rng.random((100_000, n))
    weights /= weights.sum(axis=1, keepdims=True)
    mu = rng.standard_normal(n) * 1e-3
    m = rng.standard_normal((n, n)) * 1e-2
    cov = m @ m.T
    t_py = timeit(lambda: _py.trial_stats(weights, mu, cov))
    print(f"  numpy fallback : {t_py * 1e3:8.2f} ms")
    if _core is not None:
        t_cy = timeit(lambda: _core.trial_stats(weights, mu, cov))
        print(f"  cython         : {t_cy * 1e3:8.2f} ms   ({t_py / t_cy:.2f}x)")
        ra, ka = _py.trial_stats(weights, mu, cov)
        rb, kb = _core.trial_stats(weights, mu, cov)
        print(f"  max rel diff   : {max(np.max(np.abs(ra - rb) / np.abs(rb)), np.max(np.abs(ka - kb) / kb)):.2e}")

    if _core is None:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
