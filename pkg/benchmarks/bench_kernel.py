#!/usr/bin/env python3
"""Benchmark the collection kernels: compiled extension vs numpy fallback.

Usage:
    python benchmarks/bench_kernel.py [--samples N] [--repeat R]

Times scalar multiplies, batched multiplies, associativity scans and a
subgroup closure on a spread of group sizes, for every available backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from maxclass5.engine import build_group
from maxclass5.kernel import available_backends
from maxclass5.structure import closure


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_group(params, samples, repeat, backends):
    G = build_group(*params)
    rng = np.random.default_rng(0)
    A, B, C = rng.integers(0, G.order, size=(3, samples), dtype=np.int64)
    print(f"\n(n={params[0]}, w={params[1]}, z={params[2]}, a={params[3]})"
          f"  order 5^{G.n}")
    header = f"  {'backend':8s} {'scalar mul':>12s} {'mul_batch':>12s} " \
             f"{'assoc scan':>12s} {'closure':>12s}"
    print(header)
    for name, mod in backends.items():
        k = mod.make_kernel(G.kt)

        def scalar():
            acc = 0
            for i in range(10_000):
                acc = k.mul(acc, 12345 % G.order)

        t_scalar = timeit(scalar, repeat) / 10_000
        t_batch = timeit(lambda: k.mul_batch(A, B), repeat) / samples
        t_assoc = timeit(lambda: k.assoc_first_fail(A, B, C), repeat)

        G.kern = k  # route closure through this backend
        gens = [G.gen_y()] + [G.gen_s(j) for j in range(2, G.n)]
        t_clo = timeit(lambda: closure(G, gens), repeat)
        print(f"  {name:8s} {t_scalar * 1e9:9.0f} ns {t_batch * 1e9:9.0f} ns "
              f"{t_assoc * 1e3:9.1f} ms {t_clo * 1e3:9.1f} ms")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=10 ** 5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    print("available backends:", ", ".join(backends))
    if "c" not in backends:
        print("note: compiled kernel missing; reinstall with a C toolchain "
              "to compare")
    for params in [(4, 0, 0, ()), (6, 1, 1, (1,)), (7, 0, 0, (2, 4, 1)),
                   (8, 3, 2, ())]:
        bench_group(params, args.samples, args.repeat, backends)


if __name__ == "__main__":
    main()
