#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-python fallback.

Times the three hot operations (single Kraus step, 20-step trajectory,
Jacobi eigenvalues) plus a fully validated n-step evolution, then a slice
of the closed-form-vs-iterated verification grid, and prints the speedups.

Run from a checkout:  python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from damplab import _kernels_py
from damplab.channels import closed_form_ad, two_qubit_kraus
from damplab.states import random_density

try:
    from damplab import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat, inner):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bench_backend(impl, repeat):
    rho = np.ascontiguousarray(random_density(0))
    ops2 = two_qubit_kraus("ad", 0.4, "left")
    ops4 = two_qubit_kraus("ad", 0.4, "both")
    herm = np.ascontiguousarray(rho + rho.conj().T)

    rows = {}
    rows["apply_kraus4 (2 ops)"] = best_of(lambda: impl.apply_kraus4(rho, ops2), repeat, 2000)
    rows["apply_kraus4 (4 ops)"] = best_of(lambda: impl.apply_kraus4(rho, ops4), repeat, 2000)
    rows["trajectory4 (n=20)"] = best_of(lambda: impl.trajectory4(rho, ops2, 20), repeat, 500)
    rows["eigvalsh4"] = best_of(lambda: impl.eigvalsh4(herm), repeat, 2000)

    def validated_evolution():
        cur = rho
        for _ in range(15):
            cur = impl.apply_kraus4(np.ascontiguousarray(cur), ops2)
            impl.eigvalsh4(cur)

    rows["15 validated steps"] = best_of(validated_evolution, repeat, 100)

    def oracle_slice():
        n_axis = np.arange(21)
        for seed in range(20):
            state = np.ascontiguousarray(random_density(seed))
            for gamma in (0.25, 0.75):
                for side in ("left", "right", "both"):
                    it = impl.trajectory4(state, two_qubit_kraus("ad", gamma, side), 20)
                    cf = closed_form_ad(state, gamma, side, n_axis)
                    assert np.abs(it - cf).max() <= 1e-12

    rows["oracle grid slice (20 states)"] = best_of(oracle_slice, max(1, repeat // 2), 1)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions per row")
    args = parser.parse_args()

    print("timing pure-python fallback ...")
    py_rows = bench_backend(_kernels_py, args.repeat)
    if _kernels is None:
        print("compiled extension not built; fallback numbers only\n")
        for name, t in py_rows.items():
            print(f"{name:<32} {t * 1e6:>10.1f} us")
        return

    print("timing compiled extension ...\n")
    cy_rows = bench_backend(_kernels, args.repeat)
    header = f"{'operation':<32} {'python':>12} {'cython':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name in py_rows:
        tp, tc = py_rows[name], cy_rows[name]
        print(f"{name:<32} {tp * 1e6:>10.1f} us {tc * 1e6:>10.1f} us {tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
