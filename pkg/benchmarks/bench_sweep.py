#!/usr/bin/env python3
"""Benchmark the sweep kernel backends and an end-to-end membership scan.

The hot loop classifies (direction x point) pairs; the compiled extension
avoids the mask temporaries of the numpy fallback.  Run after building the
extension (pip install -e .):

    python3 benchmarks/bench_sweep.py
"""

import math
import time

import numpy as np

import hrnr
from hrnr import kernels
from hrnr.presets import infinity_empty_model


def bench_kernel(backend, n_points=600, n_dirs=2000, reps=20):
    rng = np.random.default_rng(0)
    px = rng.uniform(-1, 1, n_points)
    py = rng.uniform(-1, 1, n_points)
    w = np.ones(n_points)
    ang = rng.uniform(0, math.pi, n_dirs)
    vx, vy = np.cos(ang), np.sin(ang)
    flip = vx < 0
    vx, vy = np.where(flip, -vx, vx), np.where(flip, -vy, vy)
    kernels.set_backend(backend)
    kernels.atom_side_sweep(px, py, w, vx, vy, 1e-9)  # warm up
    t0 = time.perf_counter()
    for _ in range(reps):
        kernels.atom_side_sweep(px, py, w, vx, vy, 1e-9)
    return (time.perf_counter() - t0) / reps


def bench_member(backend, n_queries=120):
    model = infinity_empty_model()
    rng = np.random.default_rng(1)
    pts = [complex(*rng.uniform(-1, 1, 2)) for _ in range(n_queries)]
    kernels.set_backend(backend)
    hrnr.member_infinity(model, pts[0])  # warm up
    t0 = time.perf_counter()
    for z in pts:
        hrnr.member_infinity(model, z)
    return (time.perf_counter() - t0) / n_queries


def main():
    print(f"available backends: {', '.join(kernels.available_backends())}")
    rows = []
    for backend in kernels.available_backends():
        tk = bench_kernel(backend)
        tm = bench_member(backend)
        rows.append((backend, tk, tm))
    print(f"{'backend':<10} {'kernel (600x2000)':>20} {'member_infinity':>18}")
    for backend, tk, tm in rows:
        print(f"{backend:<10} {tk * 1e3:>17.2f} ms {tm * 1e3:>15.2f} ms")
    if len(rows) == 2:
        base = {b: tk for b, tk, _ in rows}
        if "cython" in base and "numpy" in base:
            print(f"kernel speedup (cython vs numpy): {base['numpy'] / base['cython']:.1f}x")


if __name__ == "__main__":
    main()
