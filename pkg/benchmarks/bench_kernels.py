"""Compare the pure-numpy and numba-compiled kernel backends.

Times the batched hyperboloid kernels on synthetic workloads of a few
sizes and prints one table row per (kernel, size) with the median
wall-clock time of each backend and the speedup of the compiled path.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 100 1000 10000]
                                        [--dim 2] [--repeats 7]
"""

import argparse
import statistics
import time

import numpy as np

from geoprox import HyperbolicGeometry
from geoprox.kernels import accelerated, reference


def _workload(dim, size, seed):
    geom = HyperbolicGeometry(dim)
    rng = np.random.default_rng(seed)
    base = geom.random_point(rng, 0.8)
    stack = np.ascontiguousarray(
        [geom.random_point(rng, 0.8).coords for _ in range(size)])
    tangents = np.ascontiguousarray(
        [geom.random_tangent(base, rng, 0.8).vec for _ in range(size)])
    return base.coords, stack, tangents


def _median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="kernel backend micro-benchmark")
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[100, 1000, 10000],
                        help="batch sizes to time")
    parser.add_argument("--dim", type=int, default=2,
                        help="hyperboloid dimension")
    parser.add_argument("--repeats", type=int, default=7,
                        help="repetitions per measurement (median wins)")
    args = parser.parse_args(argv)

    print("dim=%d repeats=%d" % (args.dim, args.repeats))
    header = "%-12s %8s %14s %14s %9s" % (
        "kernel", "size", "numpy [ms]", "numba [ms]", "speedup")
    print(header)
    print("-" * len(header))

    for size in args.sizes:
        base, stack, tangents = _workload(args.dim, size, seed=size)
        x0 = stack[0]
        cases = (
            ("dist_many", lambda m: m.dist_many(stack, base)),
            ("log_many", lambda m: m.log_many(base, stack)),
            ("exp_many", lambda m: m.exp_many(base, tangents)),
            ("cppa_cycle", lambda m: m.cppa_cycle(stack, base, 0.25)),
            ("l1_prox_fp", lambda m: m.l1_prox_fp(x0, 0.4, 1e-8, 30)),
        )
        for name, call in cases:
            call(accelerated)  # trigger jit compilation outside the timer
            t_np = _median_time(lambda: call(reference), args.repeats)
            t_nb = _median_time(lambda: call(accelerated), args.repeats)
            print("%-12s %8d %14.3f %14.3f %8.1fx"
                  % (name, size, 1e3 * t_np, 1e3 * t_nb,
                     t_np / t_nb if t_nb > 0 else float("inf")))


if __name__ == "__main__":
    main()
