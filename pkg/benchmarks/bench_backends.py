"""Timing comparison of the compiled and pure-numpy evolution backends.

Run as a script:

    python3 benchmarks/bench_backends.py --n-mu 128 --steps 16384

Reports best-of-N wall times for both implementations and the largest
element-wise deviation between their traces.
"""

import argparse
import time

import numpy as np

from zerosound import build_angular_grid, stability_bound
from zerosound._kernels import BACKEND, _evolve_numpy, evolve_trace


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-mu", type=int, default=128)
    parser.add_argument("--steps", type=int, default=16384)
    parser.add_argument("--coupling", type=float, default=1.0)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    grid = build_angular_grid(args.n_mu)
    y0 = np.ones(args.n_mu, dtype=np.complex128)
    mu = np.ascontiguousarray(grid.nodes)
    half_w = np.ascontiguousarray(0.5 * grid.weights)
    a = args.coupling
    dt = stability_bound(a)

    print(f"N = {args.n_mu}, steps = {args.steps}, A = {a}, dt = {dt:.5f}, "
          f"active backend: {BACKEND}")

    t_numpy = _best_of(lambda: _evolve_numpy(y0, mu, half_w, a, dt, args.steps), args.repeats)
    print(f"numpy  : {1e3 * t_numpy:9.2f} ms")

    if BACKEND != "numba":
        print("numba  : unavailable (not importable or disabled by environment)")
        return

    evolve_trace(y0, mu, half_w, a, dt, 8)  # compile outside the timed region
    t_numba = _best_of(lambda: evolve_trace(y0, mu, half_w, a, dt, args.steps), args.repeats)
    print(f"numba  : {1e3 * t_numba:9.2f} ms   (speedup x{t_numpy / t_numba:.1f})")

    ref = _evolve_numpy(y0, mu, half_w, a, dt, args.steps)
    fast = evolve_trace(y0, mu, half_w, a, dt, args.steps)
    print(f"max |trace difference| = {float(np.max(np.abs(ref - fast))):.3e}")


if __name__ == "__main__":
    main()
