"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--n 200000] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from mating_forge import _kernels_py
from mating_forge.slowmate import escape_radius, map_from_critical_values
from mating_forge.slowmate.render import basin_targets

try:
    from mating_forge import _kernels
except ImportError:  # extension not built
    _kernels = None

RABBIT = -0.12256116687665351 + 0.7448617666197441j


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    z = rng.uniform(-2.5, 2.5, args.n) + 1j * rng.uniform(-2.5, 2.5, args.n)
    f = map_from_critical_values(-0.6180339887498949, complex("inf"))
    white, black = basin_targets(f)
    coeffs = np.array(f.coeffs)
    cases = {
        "green": lambda m: m.green_batch(RABBIT, z, escape_radius(RABBIT), 1000),
        "boettcher": lambda m: m.boettcher_batch(RABBIT, z, escape_radius(RABBIT), 1000),
        "render": lambda m: m.render_labels(coeffs, z, white, black, 200, 1e-3),
    }
    print(f"{'kernel':<10} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for name, fn in cases.items():
        tp = best_of(lambda: fn(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:<10} {tp:11.4f} {'n/a':>11} {'n/a':>8}")
            continue
        tc = best_of(lambda: fn(_kernels), args.repeat)
        print(f"{name:<10} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
