"""Benchmark the compiled Gauss-Newton kernel against the pure-Python one.

Usage:  python3 benchmarks/bench_kernels.py [--samples N] [--seed S]
"""

import argparse
import statistics
import time

from jordan2._kernels import CompiledKernel, get_kernel
from jordan2.deform import direction


def run(kernel, starts, tol=1e-12, max_iter=50):
    t0 = time.perf_counter()
    converged = 0
    iters = []
    for start in starts:
        coords, rnorm, n, ok = kernel.project(list(start), tol, max_iter)
        iters.append(n)
        converged += bool(ok)
    elapsed = time.perf_counter() - t0
    return elapsed, converged, statistics.mean(iters)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    starts = [[2.0 * v for v in direction(args.seed, k)]
              for k in range(args.samples)]

    python = get_kernel("python")
    compiled = get_kernel("compiled")
    have_compiled = isinstance(compiled, CompiledKernel)

    results = [("python", run(python, starts))]
    if have_compiled:
        results.append(("compiled", run(compiled, starts)))
    else:
        print("compiled kernel unavailable; benchmarking python only")

    print(f"{args.samples} projections, seed {args.seed}")
    for name, (elapsed, converged, mean_iters) in results:
        rate = args.samples / elapsed
        print(f"  {name:9s} {elapsed:8.3f}s  {rate:9.1f} proj/s  "
              f"converged {converged}/{args.samples}  "
              f"mean iters {mean_iters:.1f}")
    if have_compiled:
        speedup = results[0][1][0] / results[1][1][0]
        print(f"  speedup: {speedup:.1f}x")


if __name__ == "__main__":
    main()
