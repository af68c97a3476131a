#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the profile convolution at growing bounds (plus the transform
path for reference) and the interval-cover scan in both pruned and
brute-force modes.

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from eqrep import _kernels
from eqrep.intset import IntSet
from eqrep.repcore import rep_profile
from eqrep.search import enumerate_p2


def time_call(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def random_set(bound, density, seed):
    rng = np.random.default_rng(seed)
    bits = rng.random(bound + 1) < density
    return IntSet.from_mask(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))


def bench_profiles(exponents):
    print("profile convolution (seconds, best of 3)")
    header = f"{'bound':>10}"
    backends = list(_kernels.available_backends())
    for name in backends:
        header += f"{name:>12}"
    header += f"{'transform':>12}"
    print(header)
    for exp in exponents:
        bound = 1 << exp
        s = random_set(bound, 0.5, seed=exp)
        row = f"{f'2^{exp}':>10}"
        for name in backends:
            with _kernels.use_backend(name):
                row += f"{time_call(lambda: rep_profile(s, bound)):>12.4f}"
        row += f"{time_call(lambda: _kernels.fft_ordered_counts(s.mask, bound)):>12.4f}"
        print(row)


def bench_search(grid, brute_grid):
    print("\ninterval-cover scan (seconds, best of 3)")
    backends = list(_kernels.available_backends())
    header = f"{'scan':>16}"
    for name in backends:
        header += f"{name:>12}"
    print(header)
    for m in grid:
        row = f"{f'm={m} pruned':>16}"
        for name in backends:
            with _kernels.use_backend(name):
                row += f"{time_call(lambda: enumerate_p2(m), repeats=1):>12.4f}"
        print(row)
    for m in brute_grid:
        row = f"{f'm={m} brute':>16}"
        for name in backends:
            with _kernels.use_backend(name):
                row += f"{time_call(lambda: enumerate_p2(m, prune=False), repeats=1):>12.4f}"
        print(row)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller grids")
    args = parser.parse_args()

    print(f"backends available: {', '.join(_kernels.available_backends())}")
    if args.quick:
        bench_profiles([12, 14])
        bench_search([12, 16], [10])
    else:
        bench_profiles([12, 14, 16, 17])
        bench_search([14, 18, 20], [12, 14])


if __name__ == "__main__":
    main()
