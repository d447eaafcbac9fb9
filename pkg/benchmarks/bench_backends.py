"""Time the compiled and pure-Python DP backends on the same tables.

    python3 benchmarks/bench_backends.py [--sizes 8 10 12] [--repeat 3]

Both backends must produce identical tables; the script checks that before
reporting timings.
"""

import argparse
import time

import numpy as np

from minpsc import pccs
from minpsc.generators import tree_plus_g


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--chords", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = pccs.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; only the Python backend is available")
    print(f"{'n':>4} {'m':>4} " + " ".join(f"{b + ' ms':>14}" for b in backends) + f" {'speedup':>9}")
    for n in args.sizes:
        inst = tree_plus_g(n, args.chords, 9, seed=args.seed)
        layout = pccs.Layout(inst, [0] * n)
        col = np.arange(n, dtype=np.int64)
        times, tables = {}, {}
        for b in backends:
            times[b], tables[b] = best_time(lambda: layout.fill(col, n, backend=b), args.repeat)
        if len(backends) == 2:
            assert list(np.asarray(tables["compiled"].D)) == list(tables["python"].D), "backends disagree"
        speed = times["python"] / times["compiled"] if len(backends) == 2 else float("nan")
        print(f"{n:>4} {inst.m:>4} " + " ".join(f"{times[b] * 1000:>14.2f}" for b in backends) + f" {speed:>8.1f}x")


if __name__ == "__main__":
    main()
