"""Time the all-pairs BFS kernel under each available backend.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import time

import numpy as np

from geodetic import GroupSpec, available_backends, cayley_ball, gen_family, use_backend
from geodetic import _backend

CASES = {
    "petersen": lambda: gen_family("petersen"),
    "tree(3,6)": lambda: gen_family("tree", branching=3, depth=6),
    "hypercube(9)": lambda: gen_family("hypercube", d=9),
    "C3*C3 R8": lambda: cayley_ball(GroupSpec.cyclic(3, 3), 8).graph,
    "C2*C2*C3 R7": lambda: cayley_ball(GroupSpec.cyclic(2, 2, 3), 7).graph,
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--cases", nargs="*", default=list(CASES), choices=list(CASES))
    args = parser.parse_args(argv)

    backends = available_backends()
    print(f"{'graph':<14}{'|V|':>7}" + "".join(f"{b + ' (s)':>14}" for b in backends) + f"{'speedup':>10}")
    for name in args.cases:
        g = CASES[name]()
        indptr, indices = g.csr
        row, results = [], []
        for b in backends:
            previous = use_backend(b)
            try:
                seconds, out = best_of(lambda: _backend.all_pairs(indptr, indices), args.repeat)
            finally:
                use_backend(previous)
            row.append(seconds)
            results.append(out)
        for other in results[1:]:
            assert all(np.array_equal(x, y) for x, y in zip(results[0], other)), "backends disagree"
        speed = f"{row[-1] / row[0]:>9.1f}x" if len(row) > 1 else f"{'-':>10}"
        print(f"{name:<14}{len(g):>7}" + "".join(f"{s:>14.4f}" for s in row) + speed)


if __name__ == "__main__":
    main()
