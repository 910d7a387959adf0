"""Benchmark the compiled kernels against the pure-Python fallback.

Times ln_gamma and reg_inc_beta over fixed pseudo-random workloads and, as
an end-to-end check, the t tail probability for a grid of statistics.  Run:

    python benchmarks/bench_kernels.py [--n 200000]
"""

from __future__ import annotations

import argparse
import random
import time

from moodkit import _kernels_py

try:
    from moodkit import _kernels
except ImportError:
    _kernels = None


def _workloads(n: int):
    rng = random.Random(90210)
    lg_args = [10 ** rng.uniform(-2, 6) for _ in range(n)]
    beta_args = [(rng.random(), 10 ** rng.uniform(-1, 2),
                  10 ** rng.uniform(-1, 2)) for _ in range(n)]
    return lg_args, beta_args


def _time(fn, args, unpack=False) -> float:
    start = time.perf_counter()
    if unpack:
        for a in args:
            fn(*a)
    else:
        for a in args:
            fn(a)
    return time.perf_counter() - start


def _row(label: str, pure: float, compiled, n: int):
    per_pure = pure / n * 1e6
    if compiled is None:
        print(f"{label:<14} pure {pure:8.3f}s ({per_pure:7.3f} us/call)   "
              "compiled: unavailable")
        return
    per_comp = compiled / n * 1e6
    print(f"{label:<14} pure {pure:8.3f}s ({per_pure:7.3f} us/call)   "
          f"compiled {compiled:8.3f}s ({per_comp:7.3f} us/call)   "
          f"speedup {pure / compiled:5.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000,
                        help="evaluations per function (default 200000)")
    args = parser.parse_args()
    n = args.n
    lg_args, beta_args = _workloads(n)

    if _kernels is None:
        print("compiled backend not built; timing pure backend only")

    lg_pure = _time(_kernels_py.ln_gamma, lg_args)
    lg_comp = _time(_kernels.ln_gamma, lg_args) if _kernels else None
    _row("ln_gamma", lg_pure, lg_comp, n)

    rb_pure = _time(_kernels_py.reg_inc_beta, beta_args, unpack=True)
    rb_comp = (_time(_kernels.reg_inc_beta, beta_args, unpack=True)
               if _kernels else None)
    _row("reg_inc_beta", rb_pure, rb_comp, n)

    # sanity: identical results on a sample of the workload
    if _kernels is not None:
        for x, a, b in beta_args[::max(1, n // 500)]:
            assert _kernels.reg_inc_beta(x, a, b) == \
                _kernels_py.reg_inc_beta(x, a, b)
        print("agreement spot-check: identical on sampled workload")


if __name__ == "__main__":
    main()
