#!/usr/bin/env python3
"""Sweep the block-swap family over a wide n range and print, per topology,
the verdict-channel deltas, the dense-channel decay, and the fitted decay
rate.  A quick way to see weak-but-not-strong null convergence at scale.

Usage: python scripts/weak_convergence_sweep.py [max_exponent] [seed]
"""

import sys

from sglab.linalg import zero_operator
from sglab.operators import block_swap
from sglab.reporting import convergence_csv
from sglab.topology import default_test_set, measure_convergence


def run(max_exp: int = 6, seed: int = 0) -> None:
    n_grid = [2**k for k in range(1, max_exp + 1)]
    D = 2 * max(n_grid)
    tests = default_test_set(D, p=2.0, seed=seed)
    seq = {n: block_swap(n, D) for n in n_grid}
    for topology in ("weak", "strong"):
        rep = measure_convergence(seq, zero_operator(D), topology, tests)
        print(f"# topology={topology} verdict={rep.verdict} "
              f"dense-decay-rate={rep.dense_decay_rate}")
        print(convergence_csv(rep), end="")
        if rep.dense_delta:
            print("# dense channel:",
                  " ".join(f"{d:.3e}" for d in rep.dense_delta))


if __name__ == "__main__":
    max_exp = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    run(max_exp, seed)
