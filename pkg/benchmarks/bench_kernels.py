#!/usr/bin/env python3
"""Benchmark the compiled iteration kernels against the numpy fallback.

Runs each kernel on a representative workload per raster kind and prints a
table of wall times plus the speedup.  Usage:

    python benchmarks/bench_kernels.py [--res 256] [--max-iter 1000]
"""

import argparse
import math
import time

import numpy as np

from holomove.render import _kernels_py

try:
    from holomove.render import _kernels as compiled
except ImportError:
    compiled = None


def workloads(res, max_iter):
    span = np.linspace(-10, 10, res)
    mspan = np.linspace(-2.2, 0.8, res)
    mspan_y = np.linspace(-1.5, 1.5, res)
    lspan_x = np.linspace(1, 5, res)
    lspan_y = np.linspace(-2, 2, res)
    lam = complex(math.exp(-1))
    return [
        ("mandelbrot", lambda k: k.mandelbrot(mspan, mspan_y, max_iter)),
        ("locus_g", lambda k: k.locus_g(lam, lspan_x, lspan_y, max_iter)),
        ("param_fa", lambda k: k.param_fa(span, span, max_iter)),
        ("dyn_fa", lambda k: k.dyn_fa(3.7 + 0.5j, span, span, max_iter)),
    ]


def bench(fn, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--res", type=int, default=256)
    ap.add_argument("--max-iter", type=int, default=1000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"workload: {args.res}x{args.res} pixels, max_iter={args.max_iter}")
    header = f"{'kernel':<12} {'python':>10} {'compiled':>10} {'speedup':>9} {'agree':>7}"
    print(header)
    print("-" * len(header))
    for name, call in workloads(args.res, args.max_iter):
        t_py = bench(lambda: call(_kernels_py), args.repeats)
        if compiled is None:
            print(f"{name:<12} {t_py:>9.3f}s {'n/a':>10} {'n/a':>9} {'n/a':>7}")
            continue
        t_c = bench(lambda: call(compiled), args.repeats)
        # borderline pixels of chaotic orbits may flip across backends;
        # report the agreement fraction alongside
        la, _ = call(_kernels_py)
        lb, _ = call(compiled)
        agree = float(np.mean(la == lb))
        print(f"{name:<12} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>8.1f}x "
              f"{agree:>6.1%}")


if __name__ == "__main__":
    main()
