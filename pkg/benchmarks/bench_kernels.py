"""Time the exhaustive kernels with and without numba.

    python3 benchmarks/bench_kernels.py --n 9 --graphs 20

The pure backend is what ``PCC_NO_NUMBA=1`` selects at runtime.
"""

import argparse
import time

import numpy as np

from pcc import _kernels
from pcc.generators import random_gnp


def bench(fn, graphs, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for G in graphs:
            fn(G)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--graphs", type=int, default=20)
    ap.add_argument("--p", type=float, default=0.7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    graphs = [random_gnp(args.n, args.p, 3, seed=args.seed + i) for i in range(args.graphs)]
    budget = 10**9
    cases = {
        "hamilton cycle": lambda k: lambda G: k.pc_cycle_search(G.matrix, G.n, G.n, budget),
        "two-factor": lambda k: lambda G: k.two_factor_search(G.matrix, np.ones(G.n, np.bool_), budget),
        "longest path": lambda k: lambda G: k.longest_pc_path(G.matrix, budget),
    }
    for G in graphs[:1]:
        for make in cases.values():
            make(_kernels.JIT)(G)  # compile outside the timed region

    print(f"{'kernel':<16}{'python s':>12}{'numba s':>12}{'speedup':>10}")
    for name, make in cases.items():
        t_py = bench(make(_kernels.PURE), graphs, args.repeat)
        t_jit = bench(make(_kernels.JIT), graphs, args.repeat)
        print(f"{name:<16}{t_py:>12.4f}{t_jit:>12.4f}{t_py / max(t_jit, 1e-12):>10.1f}")


if __name__ == "__main__":
    main()
