"""Compare the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]

Runs the two hot kernels (lattice box scan, rank mod p) on identical
workloads through both backends, verifies the outputs agree, and prints a
timing table with speedups.
"""

import argparse
import random
import time

from valuix import kernels
from valuix.kernels import _fallback


def scan_workload(rng):
    cases = []
    for _ in range(60):
        k = rng.randint(1, 4)
        normals = [[rng.randint(0, 6) for _ in range(2)] for _ in range(k)]
        normals = [r for r in normals if sum(r) > 0] or [[1, 1]]
        rhs = [rng.randint(4, 40) for _ in normals]
        cases.append((normals, rhs, [1, 1], True, [45, 45]))
    for _ in range(6):
        normals = [[rng.randint(0, 3) for _ in range(3)] for _ in range(3)]
        normals = [r for r in normals if sum(r) > 0] or [[1, 1, 1]]
        rhs = [rng.randint(2, 12) for _ in normals]
        cases.append((normals, rhs, [0, 0, 0], False, [15, 15, 15]))
    return cases


def rank_workload(rng):
    p = 2147483647
    cases = []
    for _ in range(20):
        rows = rng.randint(40, 120)
        cols = rng.randint(40, 120)
        m = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        cases.append((m, p))
    return cases


def run(label, fn, cases, repeats):
    best = None
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = [fn(*case) for case in cases]
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if kernels.BACKEND != "compiled":
        print("note: compiled extension not available; comparing fallback to itself")

    rng = random.Random(2024)
    table = []
    for name, workload, active, pure in (
        ("box scan", scan_workload(rng), kernels.scan_min_generators, _fallback.scan_min_generators),
        ("rank mod p", rank_workload(rng), kernels.rank_modp, _fallback.rank_modp),
    ):
        t_active, r_active = run("active", active, workload, args.repeats)
        t_pure, r_pure = run("fallback", pure, workload, args.repeats)
        assert r_active == r_pure, f"{name}: backend results differ"
        table.append((name, t_active, t_pure))

    print(f"backend: {kernels.BACKEND} (best of {args.repeats} runs)\n")
    print(f"{'kernel':<12} {'active (s)':>12} {'fallback (s)':>14} {'speedup':>9}")
    for name, t_active, t_pure in table:
        speedup = t_pure / t_active if t_active else float("inf")
        print(f"{name:<12} {t_active:>12.4f} {t_pure:>14.4f} {speedup:>8.1f}x")


if __name__ == "__main__":
    main()
