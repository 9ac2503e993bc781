"""Timing comparison of the compiled and interpreted classification kernels.

Run:  python benchmarks/bench_sweep.py [n]
Classifies an n x n rule-plane grid (default 500) with both backends and
reports wall time and speedup.  Results are checked for agreement first.
"""
import sys
import time

from nkpolicy import ModelParams
from nkpolicy import _kernel_py as kernel_py
from nkpolicy.stability import grid_axis, plane_coefficients

try:
    from nkpolicy import _kernel_cy as kernel_cy
except ImportError:
    kernel_cy = None


def run(kernel, coeffs, fpi, fx, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        cols = kernel.classify_grid(*coeffs, fpi, fx, 1e-9)
        best = min(best, time.perf_counter() - start)
    return best, cols


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 500
    params = ModelParams()
    coeffs = plane_coefficients(params)
    fpi = grid_axis((-5.0, 90.0), n)
    fx = grid_axis((-10.0, 2.0), n)

    t_py, cols_py = run(kernel_py, coeffs, fpi, fx)
    print(f"interpreted kernel: {n}x{n} grid in {t_py:.3f} s "
          f"({n * n / t_py / 1e6:.2f} Mpoints/s)")

    if kernel_cy is None:
        print("compiled kernel not built; install with Cython for the comparison")
        return 0

    t_cy, cols_cy = run(kernel_cy, coeffs, fpi, fx)
    mismatch = sum(1 for a, b in zip(cols_py[0], cols_cy[0]) if a != b)
    print(f"compiled kernel:    {n}x{n} grid in {t_cy:.3f} s "
          f"({n * n / t_cy / 1e6:.2f} Mpoints/s)")
    print(f"speedup: {t_py / t_cy:.1f}x, region-code mismatches: {mismatch}")
    return 0 if mismatch == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
