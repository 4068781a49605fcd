"""Time the numba kernels against their numpy fallbacks on M(D_n,2) tables.

    python3 benchmarks/bench_kernels.py [--n 3 6 10 16] [--repeat 5]

The first numba call per kernel is excluded (compilation); each number is the
best of ``--repeat`` runs.  Outputs of the two backends are compared as well.
"""

import argparse
import time

import numpy as np

from ahg import _accel, kernels
from ahg.algebra import dihedral_group, moufang_extension


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[3, 6, 10, 16])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<22}{'n':>4}{'|L|':>6}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}  same")
    for n in args.n:
        table = moufang_extension(dihedral_group(n)[0]).table
        edges = kernels.associating_triples(table)
        cases = {
            "associating_triples": lambda: kernels.associating_triples(table),
            "moufang_violation": lambda: kernels.moufang_violation(table),
            "first_nonassociative": lambda: kernels.first_nonassociative(table),
            "cooccurrence": lambda: kernels.cooccurrence(edges, len(table)),
        }
        for name, fn in cases.items():
            _accel.USE_NUMBA = True
            fn()  # compile
            t_nb, out_nb = best_of(fn, args.repeat)
            _accel.USE_NUMBA = False
            t_np, out_np = best_of(fn, args.repeat)
            _accel.USE_NUMBA = True
            print(f"{name:<22}{n:>4}{len(table):>6}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}"
                  f"{t_np / max(t_nb, 1e-9):>10.1f}  {same(out_nb, out_np)}")


if __name__ == "__main__":
    main()
