#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-Python twins.

Two workloads: a radial shot at tight tolerance (the stepping loop) and a
Sturm inertia sweep on a large tridiagonal pencil (the eigenvalue-count
loop). Also reports the agreement between backends.

Usage: python3 benchmarks/bench_core.py [--repeat N]
"""

import argparse
import time

import numpy as np

from plaplab import Nonlinearity, ProblemParams, SolverConfig, solve_ivp
from plaplab._core import implementations
from plaplab.stability import assemble_pencil


def time_call(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_shot(impls, repeat):
    p, alpha, n = 2.0, 0.0, 3.0
    r0, u0, w0 = 1e-4, -1.6666e-9, -3.333e-13
    args = (p, alpha, n, 0, 0.0, None, r0, u0, w0, 200.0, 1e-10, 1e-12,
            2_000_000, 0.05)
    print("\nradial shot (exponential, n=3, r -> 200, rtol 1e-10)")
    results = {}
    for name, mod in impls.items():
        dt, out = time_call(lambda m=mod: m.solve_radial(*args), repeat)
        results[name] = out
        print(f"  {name:8s} {dt * 1e3:10.2f} ms   ({len(out[0])} nodes)")
    if len(results) == 2:
        a, b = results["python"], results["cython"]
        m = min(len(a[1]), len(b[1]))
        print(f"  max |u| deviation between backends: "
              f"{np.max(np.abs(a[1][:m] - b[1][:m])):.3e}")
    return results


def bench_inertia(impls, repeat):
    prof = solve_ivp(
        ProblemParams(2.0, 0.0, 9.0), Nonlinearity.gelfand(), 0.0,
        SolverConfig(r_max=220.0),
    )
    pencil = assemble_pencil(prof, Nonlinearity.gelfand(), (0.01, 200.0), 4000)
    shifts = np.linspace(-1.0, 1.0, 256)
    print("\nSturm inertia sweep (grid 4000, 256 shifts)")
    results = {}
    for name, mod in impls.items():
        dt, out = time_call(
            lambda m=mod: m.pencil_inertia_batch(
                pencil.a_diag, pencil.a_off, pencil.b_diag, pencil.b_off, shifts
            ),
            repeat,
        )
        results[name] = out
        print(f"  {name:8s} {dt * 1e3:10.2f} ms")
    if len(results) == 2:
        same = np.array_equal(results["python"], results["cython"])
        print(f"  counts identical across backends: {same}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = implementations()
    print("available backends:", ", ".join(impls))
    if "cython" not in impls:
        print("compiled extension not built; timing the fallback only")
    bench_shot(impls, args.repeat)
    bench_inertia(impls, args.repeat)


if __name__ == "__main__":
    main()
