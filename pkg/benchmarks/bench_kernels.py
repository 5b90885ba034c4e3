"""Benchmark the jitted kernels against the pure-numpy fallbacks.

Run twice to compare backends:

    python benchmarks/bench_kernels.py                      # numba (default)
    EXPHODGE_KERNELS=numpy python benchmarks/bench_kernels.py

The first numba run includes one-off JIT compilation; timings below exclude
it via a warmup call.
"""

import time

import numpy as np

from exphodge import _kernels


def timeit(fn, repeat=5):
    fn()  # warmup (and JIT compile on the numba backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_enumerate():
    # three-dimensional dilated-simplex scan, ~2.5M candidate points
    lo = np.array([-45, -45, -45], dtype=np.int64)
    hi = np.array([90, 90, 90], dtype=np.int64)
    normals = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]], dtype=np.int64)
    bounds = np.array([-45, -45, -45, -90], dtype=np.int64)
    return timeit(lambda: _kernels.enumerate_box_filtered(lo, hi, normals, bounds))


def bench_rank():
    rng = np.random.default_rng(0)
    mat = rng.integers(-1000, 1000, size=(400, 400))
    return timeit(lambda: _kernels.rank_mod_p(mat, 2147483647))


def bench_torus_scan():
    rng = np.random.default_rng(1)
    exps = rng.integers(0, 5, size=(12, 3))
    coeffs = rng.integers(1, 100, size=12)
    offsets = np.array([0, 4, 8, 12])
    return timeit(lambda: _kernels.torus_common_zero(exps, coeffs, offsets, 3, 101),
                  repeat=3)


def main():
    print(f"backend: {_kernels.BACKEND}")
    for name, fn in [("lattice box scan", bench_enumerate),
                     ("rank mod p (400x400)", bench_rank),
                     ("torus zero scan (GF(101)^3)", bench_torus_scan)]:
        best = fn()
        print(f"{name:30s} {best * 1000:10.2f} ms")


if __name__ == "__main__":
    main()
