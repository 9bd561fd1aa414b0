"""Permutations in one-line notation.

A permutation of length n is stored as a tuple subclass holding the values
pi(1), ..., pi(n).  Values are 1-based at every public boundary.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Base class for malformed permutation input."""


class DuplicateValue(PermutationError):
    pass


class OutOfRange(PermutationError):
    pass


class EmptyPermutation(PermutationError):
    pass


class Permutation(tuple):
    """An immutable permutation in one-line notation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        return tuple.__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        """pi(i) with 1-based i."""
        return self[i - 1]

    def pos(self, v: int) -> int:
        """pi^-1(v), 1-based."""
        return self.index(v) + 1

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def reverse(self) -> "Permutation":
        return Permutation(self[::-1])

    def complement(self) -> "Permutation":
        n1 = len(self) + 1
        return Permutation(n1 - v for v in self)

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Permutation({to_text(self)!r})"


EMPTY = Permutation()


def from_one_line(seq: Iterable[int]) -> Permutation:
    """Validate seq as a bijection of {1..len(seq)}."""
    vals = [int(v) for v in seq]
    n = len(vals)
    seen = set()
    for v in vals:
        if v < 1 or v > n:
            raise OutOfRange(f"value {v} outside 1..{n}")
        if v in seen:
            raise DuplicateValue(f"value {v} repeated")
        seen.add(v)
    return Permutation(vals)


def parse(text: str) -> Permutation:
    """Parse '316254' or '2 10 5 1 3' (space or comma separated)."""
    t = text.strip()
    if not t or t in ("e", "eps", "()"):
        return EMPTY
    if any(c in t for c in " ,\t"):
        parts = [p for p in t.replace(",", " ").split() if p]
        return from_one_line(int(p) for p in parts)
    if not t.isdigit():
        raise PermutationError(f"cannot parse {text!r}")
    return from_one_line(int(c) for c in t)


def to_text(p: Sequence[int]) -> str:
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return " ".join(str(v) for v in p)


def identity(n: int) -> Permutation:
    return Permutation(range(1, n + 1))


# --- symmetries ------------------------------------------------------------

ATOMIC = ("inverse", "reverse", "complement")


def apply_symmetry(p: Permutation, op) -> Permutation:
    """Apply 'inverse', 'reverse', 'complement' or a sequence of them.

    A sequence is applied left to right.
    """
    if isinstance(op, str):
        ops = [s for s in op.replace("+", ",").split(",") if s]
    else:
        ops = list(op)
    # bring the word into canonical form: first invert, then reverse, then complement
    inv = rev = comp = False
    for o in ops:
        if o == "inverse":
            inv, rev, comp = (not inv), comp, rev
        elif o == "reverse":
            rev = not rev
        elif o == "complement":
            comp = not comp
        else:
            raise ValueError(f"unknown symmetry {o!r}")
    q = Permutation(p)
    if inv:
        q = q.inverse()
    if rev:
        q = q.reverse()
    if comp:
        q = q.complement()
    return q


def symmetry_class(p: Permutation) -> set:
    out = set()
    for inv in (False, True):
        q0 = p.inverse() if inv else Permutation(p)
        for rev in (False, True):
            q1 = q0.reverse() if rev else q0
            for comp in (False, True):
                out.add(q1.complement() if comp else q1)
    return out


# --- sums and flattening ---------------------------------------------------

def direct_sum(s: Sequence[int], t: Sequence[int]) -> Permutation:
    m = len(s)
    return Permutation(tuple(s) + tuple(v + m for v in t))


def skew_sum(s: Sequence[int], t: Sequence[int]) -> Permutation:
    n = len(t)
    return Permutation(tuple(v + n for v in s) + tuple(t))


def combine(s: Sequence[int], t: Sequence[int], kind: str = "sum") -> Permutation:
    if kind == "sum":
        return direct_sum(s, t)
    if kind in ("skew_sum", "skew"):
        return skew_sum(s, t)
    raise ValueError(f"unknown combination {kind!r}")


def flatten(seq: Sequence) -> Permutation:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    if len(set(seq)) != len(seq):
        raise DuplicateValue("flatten needs distinct entries")
    rank = {v: i + 1 for i, v in enumerate(sorted(seq))}
    return Permutation(rank[v] for v in seq)


# --- containment -----------------------------------------------------------

def contains(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff some subsequence of p is order-isomorphic to q.

    Depth-first search over positions of p, left to right; a partial
    embedding is kept only while its values respect the relative order of
    the corresponding prefix of q.
    """
    k = len(q)
    n = len(p)
    if k == 0:
        return True
    if k > n:
        return False
    # for each prefix length j, the prefix entries of q just below and just
    # above q[j] (as indices), so that each new value is checked in O(1)
    lo_idx = []
    hi_idx = []
    for j in range(k):
        lo = hi = -1
        for t in range(j):
            if q[t] < q[j] and (lo < 0 or q[t] > q[lo]):
                lo = t
            if q[t] > q[j] and (hi < 0 or q[t] < q[hi]):
                hi = t
        lo_idx.append(lo)
        hi_idx.append(hi)
    chosen = [0] * k

    def dfs(j: int, start: int) -> bool:
        if j == k:
            return True
        lo, hi = lo_idx[j], hi_idx[j]
        lov = chosen[lo] if lo >= 0 else 0
        hiv = chosen[hi] if hi >= 0 else n + 1
        for i in range(start, n - (k - j) + 1):
            v = p[i]
            if lov < v < hiv:
                chosen[j] = v
                if dfs(j + 1, i + 1):
                    return True
        return False

    return dfs(0, 0)


def avoids(p: Sequence[int], q: Sequence[int]) -> bool:
    return not contains(p, q)


def avoids_all(p: Sequence[int], basis: Iterable[Sequence[int]]) -> bool:
    return not any(contains(p, q) for q in basis)


# --- extrema ---------------------------------------------------------------

def lr_maxima(p: Sequence[int]) -> set:
    out, best = set(), 0
    for v in p:
        if v > best:
            out.add(v)
            best = v
    return out


def rl_minima(p: Sequence[int]) -> set:
    out, best = set(), len(p) + 1
    for v in reversed(p):
        if v < best:
            out.add(v)
            best = v
    return out


def extrema(p: Sequence[int]) -> tuple:
    if len(p) == 0:
        raise EmptyPermutation("extrema of the empty permutation")
    return lr_maxima(p), rl_minima(p)
