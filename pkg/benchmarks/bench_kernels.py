#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot paths of the random-volume experiments (Lobachevsky
evaluation, Delaunay triangulation, and the fused per-sample volume) on the
same inputs for both backends, and verifies they agree bit for bit while at
it.

    python benchmarks/bench_kernels.py [--count 2000] [--n 10]
"""

import argparse
import time

import numpy as np

from idealpoly._kernels import _pure

try:
    from idealpoly._kernels import _core
except ImportError:
    _core = None


def timeit(fn, reps=3):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=2000, help="configurations per run")
    ap.add_argument("--n", type=int, default=10, help="finite points per configuration")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    thetas = list(rng.uniform(-10.0, 10.0, 200000))
    configs = [
        (list(rng.uniform(-3, 3, args.n)), list(rng.uniform(-3, 3, args.n)))
        for _ in range(args.count)
    ]

    rows = []

    def bench(name, pure_fn, core_fn):
        tp = timeit(pure_fn)
        if core_fn is None:
            rows.append((name, tp, None))
            return
        tc = timeit(core_fn)
        rows.append((name, tp, tc))

    bench(
        f"lobachevsky x{len(thetas)}",
        lambda: [_pure.lobachevsky(t) for t in thetas],
        (lambda: [_core.lobachevsky(t) for t in thetas]) if _core else None,
    )
    bench(
        f"delaunay x{args.count} (n={args.n})",
        lambda: [_pure.delaunay_triangles(xs, ys) for xs, ys in configs],
        (lambda: [_core.delaunay_triangles(xs, ys) for xs, ys in configs])
        if _core
        else None,
    )
    bench(
        f"config_volume x{args.count} (n={args.n})",
        lambda: [_pure.config_volume(xs, ys) for xs, ys in configs],
        (lambda: [_core.config_volume(xs, ys) for xs, ys in configs])
        if _core
        else None,
    )

    if _core is not None:
        mismatches = sum(
            1
            for xs, ys in configs[:200]
            if _core.config_volume(xs, ys) != _pure.config_volume(xs, ys)
        )
        agreement = f"bit-identical on {200 - mismatches}/200 checked configs"
    else:
        agreement = "compiled backend not built; showing pure timings only"

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, tp, tc in rows:
        if tc is None:
            print(f"{name:<{width}}  {tp:>9.3f}s  {'-':>10}  {'-':>8}")
        else:
            print(f"{name:<{width}}  {tp:>9.3f}s  {tc:>9.3f}s  {tp / tc:>7.1f}x")
    print(agreement)


if __name__ == "__main__":
    main()
