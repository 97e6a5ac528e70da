"""Benchmark the compiled product kernel against the numpy fallback.

The brute-force period products dominate tower verification for n = 65537
(the root split alone multiplies two 16384-pair vectors).  Run:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from ngontower import kernels
from ngontower.invariant_sets import build_invariant_sets
from ngontower.oracle import pv_from_pairs
from ngontower.residues import FermatParams
from ngontower.splitting import f_part, part_pairs


def bench_case(name, a, b, n, npairs, repeat=3):
    rows = []
    for label, force_pure in (("compiled", False), ("numpy", True)):
        if label == "compiled" and kernels.active_backend() != "compiled":
            rows.append((label, None))
            continue
        best = None
        for _ in range(repeat):
            out = np.zeros(npairs + 1, dtype=np.int64)
            t0 = time.perf_counter()
            kernels.pair_mul_accumulate(
                a.nonzero_pairs().astype(np.int64),
                a.coeffs[a.nonzero_pairs()],
                b.nonzero_pairs().astype(np.int64),
                b.coeffs[b.nonzero_pairs()],
                n,
                out,
                force_pure=force_pure,
            )
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        rows.append((label, best))
    ops = int(a.nonzero_pairs().size) * int(b.nonzero_pairs().size)
    print(f"\n{name}  ({ops:.2e} pair products)")
    for label, dt in rows:
        if dt is None:
            print(f"  {label:>9}: extension not built")
        else:
            print(f"  {label:>9}: {dt * 1e3:10.1f} ms   {ops / dt / 1e6:8.1f} Mops/s")


def main():
    print(f"active backend: {kernels.active_backend()}")
    for n, part_a, part_b in (
        (257, f_part(1, 2), f_part(2, 2)),
        (65537, f_part(1, 4), f_part(3, 4)),
        (65537, f_part(1, 2), f_part(2, 2)),
    ):
        params = FermatParams.from_n(n)
        table = build_invariant_sets(params)
        a = pv_from_pairs(part_pairs(part_a, table), params)
        b = pv_from_pairs(part_pairs(part_b, table), params)
        bench_case(
            f"n={n}: {part_a.label()} x {part_b.label()}", a, b, n, params.npairs
        )


if __name__ == "__main__":
    main()
