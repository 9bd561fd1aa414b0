"""Time the containment kernel under both backends.

Builds the level sets of Av(52341, 53241, 52431, 35142, 42513, 351624) up
to --max-n with the numba kernel and the numpy fallback, checks that they
agree, and prints the wall time of each.  The first numba call includes
compilation, so it is timed separately as a warm-up.

    python benchmarks/bench_containment.py --max-n 10 --repeat 3
"""

import argparse
import time

import numpy as np

from permclass import _kernels
from permclass.class_enum import BASIS_APRIME, Basis


def build(patterns, N, use):
    levels = [np.zeros((1, 0), dtype=np.int8)]
    for _ in range(N):
        levels.append(_kernels.extend_level(levels[-1], patterns, use))
    return levels


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()

    pats = tuple(tuple(p) for p in Basis.of(BASIS_APRIME).patterns)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    results = {}
    for use in backends:
        if use == "numba":
            t0 = time.perf_counter()
            build(pats, 6, use)
            print(f"numba warm-up (compile): {time.perf_counter() - t0:.2f}s")
        t, levels = best_of(lambda: build(pats, a.max_n, use), a.repeat)
        results[use] = (t, levels)
        counts = [int(x.shape[0]) for x in levels]
        print(f"{use:>6}: {t:.3f}s  counts={counts}")

    if len(results) == 2:
        lv_a, lv_b = results["numpy"][1], results["numba"][1]
        same = all(np.array_equal(x, y) for x, y in zip(lv_a, lv_b))
        print(f"backends agree: {same}")
        print(f"speedup numba vs numpy: {results['numpy'][0] / results['numba'][0]:.2f}x")


if __name__ == "__main__":
    main()
