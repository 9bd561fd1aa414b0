"""Hot loop of the brute-force oracle: pattern tests through a new maximum.

Two interchangeable backends.  ``numba`` compiles a per-row scan; ``numpy``
vectorises the same test across all rows sharing an insertion position.
Set PERMCLASS_BACKEND=numpy to force the fallback (numba is used when it
imports).
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations

import numpy as np

try:  # pragma: no cover - exercised implicitly by whichever backend runs
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def backend() -> str:
    want = os.environ.get("PERMCLASS_BACKEND", "").strip().lower()
    if want == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


@lru_cache(maxsize=None)
def combos_through(N: int, k: int, t: int):
    """Index tuples i_0 < ... < i_{k-1} in range(N), grouped by i_t.

    Returns (table, counts) with table[p, c] the c-th tuple whose t-th entry
    is p, padded with zeros.
    """
    groups = [[] for _ in range(N)]
    for c in combinations(range(N), k):
        groups[c[t]].append(c)
    width = max((len(g) for g in groups), default=0)
    table = np.zeros((N, max(width, 1), k), dtype=np.int64)
    counts = np.zeros(N, dtype=np.int64)
    for p, g in enumerate(groups):
        counts[p] = len(g)
        if g:
            table[p, : len(g)] = np.array(g, dtype=np.int64)
    return table, counts


def _kill_numpy(children, pos, order, table, counts, alive):
    N = children.shape[1]
    for p in range(N):
        rows = np.nonzero(alive & (pos == p))[0]
        if rows.size == 0:
            continue
        sub = children[rows]
        hit = np.zeros(rows.size, dtype=bool)
        for c in range(counts[p]):
            g = sub[:, table[p, c][order]]
            hit |= np.all(g[:, 1:] > g[:, :-1], axis=1)
        alive[rows[hit]] = False


if HAVE_NUMBA:

    @njit(cache=True)
    def _kill_numba(children, pos, order, table, counts, alive):  # pragma: no cover - compiled
        M = children.shape[0]
        k = order.shape[0]
        for r in range(M):
            if not alive[r]:
                continue
            p = pos[r]
            for c in range(counts[p]):
                prev = children[r, table[p, c, order[0]]]
                ok = True
                for s in range(1, k):
                    v = children[r, table[p, c, order[s]]]
                    if v <= prev:
                        ok = False
                        break
                    prev = v
                if ok:
                    alive[r] = False
                    break


def extend_level(parents: np.ndarray, patterns, use: str | None = None) -> np.ndarray:
    """All one-point extensions by a new maximum that avoid every pattern.

    parents: (M, n) array of permutations that already avoid the patterns.
    """
    M, n = parents.shape
    N = n + 1
    if M == 0:
        return np.zeros((0, N), dtype=np.int8)
    blocks = []
    for p in range(N):
        top = np.full((M, 1), N, dtype=np.int8)
        blocks.append(np.concatenate([parents[:, :p], top, parents[:, p:]], axis=1))
    children = np.concatenate(blocks, axis=0)
    pos = np.repeat(np.arange(N, dtype=np.int64), M)
    alive = np.ones(children.shape[0], dtype=bool)
    kill = _kill_numba if (use or backend()) == "numba" else _kill_numpy
    for q in patterns:
        k = len(q)
        if k > N:
            continue
        if k == 1:
            alive[:] = False
            break
        t = q.index(k)
        # positions of q listed by increasing value
        order = np.argsort(np.array(q)).astype(np.int64)
        table, counts = combos_through(N, k, t)
        kill(children, pos, order, table, counts, alive)
    out = children[alive]
    if out.shape[0] > 1:
        out = out[np.lexsort(out.T[::-1])]
    return out
