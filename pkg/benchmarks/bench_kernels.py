"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from causalmetrics._kernels import pure

try:
    from causalmetrics._kernels import _fast
except ImportError:
    _fast = None


def best_of(fn, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def random_cost_matrix(rng, n):
    m = rng.normal(size=(n, n)) * 3.0
    mask = rng.uniform(size=(n, n))
    m[mask < 0.1] = math.inf
    np.fill_diagonal(m, np.abs(np.diagonal(m)))  # avoid all-pairs -inf collapse
    return m


def random_causal_points(rng, segments, dim):
    steps = rng.normal(size=(segments, dim))
    steps[:, 0] = np.abs(steps[:, 0]) + np.linalg.norm(steps[:, 1:], axis=1)
    return np.vstack([np.zeros((1, dim)), np.cumsum(steps, axis=0)])


def row(label, t_pure, t_fast):
    if t_fast is None:
        print(f"{label:<38} pure {t_pure * 1e3:9.3f} ms   compiled      n/a")
    else:
        print(
            f"{label:<38} pure {t_pure * 1e3:9.3f} ms   compiled {t_fast * 1e3:9.3f} ms"
            f"   speedup {t_pure / t_fast:7.1f}x"
        )


def main():
    rng = np.random.default_rng(99)
    print(f"compiled kernels available: {_fast is not None}\n")

    for n in (32, 64, 96):
        m = random_cost_matrix(rng, n)
        t_pure = best_of(lambda: pure.minplus_closure(m))
        t_fast = best_of(lambda: _fast.minplus_closure(m)) if _fast else None
        if _fast is not None:
            assert np.array_equal(pure.minplus_closure(m), _fast.minplus_closure(m))
        row(f"minplus_closure        n={n}", t_pure, t_fast)

    for n in (16, 32):
        m = random_cost_matrix(rng, n)
        t_pure = best_of(lambda: pure.triangle_violations(m, False))
        t_fast = best_of(lambda: _fast.triangle_violations(m, False)) if _fast else None
        row(f"triangle_violations    n={n}", t_pure, t_fast)

    for segments in (1000, 10000):
        pts = random_causal_points(rng, segments, 4)
        t_pure = best_of(lambda: pure.minkowski_polyline_gain(pts, 1e-9))
        t_fast = (
            best_of(lambda: _fast.minkowski_polyline_gain(pts, 1e-9)) if _fast else None
        )
        if _fast is not None:
            assert pure.minkowski_polyline_gain(pts, 1e-9) == _fast.minkowski_polyline_gain(pts, 1e-9)
        row(f"minkowski_polyline_gain segs={segments}", t_pure, t_fast)


if __name__ == "__main__":
    main()
