"""Benchmark the numba kernels against the pure-numpy fallback.

Usage:  python benchmarks/bench_kernels.py [--res 512] [--repeats 5]

Times each grid kernel on a res x res complex grid with both backends and
prints a table with the speedup.  The first numba call per kernel includes
JIT compilation; a warmup pass runs outside the timed region.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mobcert import kernels
from mobcert.omega import build_omega


def _grid(res: int) -> np.ndarray:
    xs = np.linspace(-3.0, 6.0, res)
    ys = np.linspace(-4.5, 4.5, res)
    return xs[None, :] + 1j * ys[:, None]


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--res", type=int, default=512)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rho = _grid(args.res)
    region = build_omega(3, 4)
    cases = {
        "disk_slack_grid": lambda b: kernels.disk_slack_grid(3, 4, rho, backend=b),
        "lambda_slack_grid": lambda b: kernels.lambda_slack_grid(3, 4, rho, backend=b),
        "omega_margin_grid": lambda b: kernels.omega_margin_grid(region, rho, backend=b),
        "burau_slack_grid": lambda b: kernels.burau_slack_grid(rho, backend=b),
        "combined_codes_grid": lambda b: kernels.combined_codes_grid(3, 4, rho, backend=b),
    }

    print(f"grid {args.res}x{args.res} = {rho.size} points, best of {args.repeats}")
    if not kernels.numba_available():
        print("numba not installed: timing the numpy path only")
    header = f"{'kernel':<22}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, fn in cases.items():
        t_np = _time(lambda: fn("numpy"), args.repeats) * 1e3
        if kernels.numba_available():
            fn("numba")  # warmup / JIT
            t_nb = _time(lambda: fn("numba"), args.repeats) * 1e3
            print(f"{name:<22}{t_np:>12.2f}{t_nb:>12.2f}{t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<22}{t_np:>12.2f}{'-':>12}{'-':>9}")


if __name__ == "__main__":
    main()
