"""Compare the compiled and numpy coefficient sieves.

    python benchmarks/bench_kernels.py [--k-max 1000000] [--repeat 3]

Prints one line per (n, kind) with the best-of-``repeat`` wall time of each
backend, the speed-up, and whether the two tables agree.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from cyclocsm import kernels
from cyclocsm.counting import coefficient_table


def best_time(fn, repeat: int) -> tuple[float, np.ndarray]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--n", type=int, nargs="*", default=[3, 16, 60, 84])
    args = ap.parse_args()

    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; reinstall with Cython available")
    print(f"k_max={args.k_max} repeat={args.repeat} threads={args.threads}")
    print(f"{'n':>3} {'kind':<9} {'compiled s':>11} {'numpy s':>9} {'speed-up':>9} agree")
    for n in args.n:
        for kind in ("simple", "multiple", "ideal"):
            tc, vc = best_time(lambda: coefficient_table(
                n, kind, args.k_max, threads=args.threads, backend=kernels.compiled).values,
                args.repeat)
            tp, vp = best_time(lambda: coefficient_table(
                n, kind, args.k_max, backend=kernels.pure).values, args.repeat)
            print(f"{n:>3} {kind:<9} {tc:>11.4f} {tp:>9.4f} {tp / tc:>8.1f}x "
                  f"{np.array_equal(vc, vp)}")


if __name__ == "__main__":
    main()
