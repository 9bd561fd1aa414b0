"""Blocks, simplicity, inflation and the one-level substitution decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm_core import Permutation, flatten


class ArityMismatch(ValueError):
    pass


class EmptyPart(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    segment: tuple  # (i, j) positions, 1-based inclusive
    range: tuple  # (a, b) values

    def __len__(self):
        return self.segment[1] - self.segment[0] + 1


@dataclass(frozen=True)
class Decomposition:
    skeleton: Permutation
    parts: tuple

    def inflate(self) -> Permutation:
        return inflate(self.skeleton, self.parts)


def proper_nontrivial_blocks(p: Sequence[int]) -> list:
    """All blocks other than singletons and the whole, sorted by segment."""
    n = len(p)
    out = []
    for i in range(n):
        lo = hi = p[i]
        for j in range(i + 1, n):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i and not (i == 0 and j == n - 1):
                out.append(Block((i + 1, j + 1), (lo, hi)))
    return out


def is_simple(p: Sequence[int]) -> bool:
    n = len(p)
    if n <= 1:
        return False
    if n == 2:
        return True
    for i in range(n - 1):
        lo = hi = p[i]
        stop = n - 1 if i == 0 else n
        for j in range(i + 1, stop):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i:
                return False
    return True


def inflate(skeleton: Sequence[int], parts: Sequence[Sequence[int]]) -> Permutation:
    if len(parts) != len(skeleton):
        raise ArityMismatch(f"{len(parts)} parts for a skeleton of length {len(skeleton)}")
    if any(len(q) == 0 for q in parts):
        raise EmptyPart("inflation parts must be nonempty")
    # offset of each skeleton value = total size of parts at smaller values
    size_by_value = [0] * (len(skeleton) + 1)
    for v, q in zip(skeleton, parts):
        size_by_value[v] = len(q)
    base = [0] * (len(skeleton) + 1)
    acc = 0
    for v in range(1, len(skeleton) + 1):
        base[v] = acc
        acc += size_by_value[v]
    out = []
    for v, q in zip(skeleton, parts):
        out.extend(base[v] + x for x in q)
    return Permutation(out)


def decomposability(p: Sequence[int]) -> tuple:
    """(sum_decomposable, skew_decomposable)."""
    n = len(p)
    s = k = False
    mx, mn = 0, n + 1
    for i in range(n - 1):
        mx = max(mx, p[i])
        mn = min(mn, p[i])
        if mx == i + 1:
            s = True
        if mn == n - i:
            k = True
    return s, k


def _sum_components(p: Sequence[int]) -> list:
    """Split points of the finest sum decomposition."""
    cuts, mx = [], 0
    for i, v in enumerate(p):
        mx = max(mx, v)
        if mx == i + 1:
            cuts.append(i + 1)
    return cuts


def _skew_components(p: Sequence[int]) -> list:
    n = len(p)
    cuts, mn = [], n + 1
    for i, v in enumerate(p):
        mn = min(mn, v)
        if mn == n - i:
            cuts.append(i + 1)
    return cuts


def substitution_decompose(p: Sequence[int]) -> Decomposition:
    """Unique one-level decomposition with a simple (or trivial) skeleton.

    For skeleton 12 the first part is sum-indecomposable, for 21 the first
    part is skew-indecomposable.
    """
    p = Permutation(p)
    n = len(p)
    if n == 0:
        raise ValueError("cannot decompose the empty permutation")
    if n == 1:
        return Decomposition(Permutation((1,)), (p,))
    s, k = decomposability(p)
    if s:
        c = _sum_components(p)[0]
        return Decomposition(Permutation((1, 2)), (flatten(p[:c]), flatten(p[c:])))
    if k:
        c = _skew_components(p)[0]
        return Decomposition(Permutation((2, 1)), (flatten(p[:c]), flatten(p[c:])))
    # neither: the maximal proper blocks partition the positions
    blocks = proper_nontrivial_blocks(p)
    maximal = []
    for b in blocks:
        if not any(c is not b and c.segment[0] <= b.segment[0] and b.segment[1] <= c.segment[1]
                   for c in blocks):
            maximal.append(b)
    segs = []
    pos = 1
    maximal.sort(key=lambda b: b.segment)
    idx = 0
    while pos <= n:
        if idx < len(maximal) and maximal[idx].segment[0] == pos:
            segs.append(maximal[idx].segment)
            pos = maximal[idx].segment[1] + 1
            idx += 1
        else:
            segs.append((pos, pos))
            pos += 1
    reps = [p[i - 1] for i, _ in segs]
    skeleton = flatten(reps)
    parts = tuple(flatten(p[i - 1:j]) for i, j in segs)
    return Decomposition(skeleton, parts)
