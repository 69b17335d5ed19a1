"""Time the residual box scan with the numba kernel and the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from ngorenstein import _kernels
from ngorenstein.graph import DecoratedGraph

CASES = [
    ("two vertices p=(1,2)", DecoratedGraph.build(["a", "b"], [1, 2], [("a", "b")]), 8, 6),
    ("triangle p=0", DecoratedGraph.build(["a", "b", "c"], [0, 0, 0], [("a", "b"), ("b", "c"), ("c", "a")]), 8, 6),
    ("star g=1, 3 arms", DecoratedGraph.build(["c", "x", "y", "z"], [1, 0, 0, 0], [("c", "x"), ("c", "y"), ("c", "z")]), 8, 6),
    ("4-path p=(1,0,2,1)", DecoratedGraph.build(["a", "b", "c", "d"], [1, 0, 2, 1], [("a", "b"), ("b", "c"), ("c", "d")]), 12, 8),
]


def run(backend, adj, q, max_n, max_e, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        hits, _ = _kernels.scan_residual_box(adj, q, max_n, max_e, backend=backend)
        best = min(best, time.perf_counter() - t)
    return best, len(hits)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = ["numpy"] + ([] if _kernels.nb is None else ["numba"])
    if "numba" in backends:
        adj = np.zeros((1, 1), dtype=np.int64)
        _kernels.scan_residual_box(adj, np.zeros(1, dtype=np.int64), 1, 1, backend="numba")  # compile
    print(f"{'case':24} {'box':>12} " + " ".join(f"{b:>10}" for b in backends) + "  hits")
    for name, g, max_n, max_e in CASES:
        adj = np.array(g.adjacency(), dtype=np.int64)
        q = adj.sum(axis=1) + 2 * np.array(g.p_vector()) - 2
        box = ((max_n + 1) * max_e) ** len(g)
        timings = [run(b, adj, q, max_n, max_e, args.repeat) for b in backends]
        assert len({h for _, h in timings}) == 1
        cols = " ".join(f"{t * 1e3:8.1f}ms" for t, _ in timings)
        print(f"{name:24} {box:>12} {cols}  {timings[0][1]}")


if __name__ == "__main__":
    main()
