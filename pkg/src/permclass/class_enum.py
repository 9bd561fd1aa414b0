"""Brute-force generation and counting of permutation classes Av(B)."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .perm_core import Permutation, contains, parse, to_text
from .simple_decomp import decomposability, is_simple

BASIS_A = ("4231", "35142", "42513", "351624")
BASIS_APRIME = ("52341", "53241", "52431", "35142", "42513", "351624")


@dataclass(frozen=True)
class Basis:
    patterns: tuple

    @classmethod
    def of(cls, items) -> "Basis":
        if isinstance(items, Basis):
            return items
        if isinstance(items, str):
            items = [s for s in items.replace(";", ",").split(",") if s.strip()]
        pats = []
        for it in items:
            pats.append(parse(it) if isinstance(it, str) else Permutation(it))
        if not pats:
            raise ValueError("a basis needs at least one pattern")
        for a in pats:
            for b in pats:
                if a != b and contains(b, a):
                    warnings.warn(f"basis patterns {to_text(a)} and {to_text(b)} are comparable")
        return cls(tuple(pats))

    def texts(self) -> list:
        return [to_text(p) for p in self.patterns]


@dataclass(frozen=True)
class CountTable:
    basis: Basis
    counts: tuple

    def to_json(self) -> str:
        return json.dumps({"basis": self.basis.texts(), "counts": list(self.counts)})

    @classmethod
    def from_json(cls, text: str) -> "CountTable":
        d = json.loads(text)
        return cls(Basis.of(d["basis"]), tuple(d["counts"]))


@lru_cache(maxsize=32)
def _levels(patterns: tuple, N: int, use: str | None = None) -> tuple:
    levels = [np.zeros((1, 0), dtype=np.int8)]
    pats = tuple(tuple(p) for p in patterns)
    for n in range(N):
        levels.append(_kernels.extend_level(levels[-1], pats, use))
    return tuple(levels)


def level_array(basis, n: int, use: str | None = None) -> np.ndarray:
    b = Basis.of(basis)
    return _levels(b.patterns, n, use)[n]


def generate_class(basis, n: int) -> list:
    arr = level_array(basis, n)
    return [Permutation(int(v) for v in row) for row in arr]


def count_class(basis, N: int) -> CountTable:
    b = Basis.of(basis)
    lv = _levels(b.patterns, N)
    return CountTable(b, tuple(int(a.shape[0]) for a in lv))


def simple_members(basis, n: int) -> list:
    arr = level_array(basis, n)
    if n >= 3:
        # two adjacent consecutive values already form a proper block
        steps = np.abs(np.diff(arr.astype(np.int16), axis=1))
        arr = arr[~(steps == 1).any(axis=1)]
    perms = (Permutation(int(v) for v in row) for row in arr)
    return [p for p in perms if is_simple(p)]


def count_simple_in_class(basis, n: int) -> int:
    return len(simple_members(basis, n))


def count_skew_indecomposable(basis, n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return sum(1 for p in generate_class(basis, n) if not decomposability(p)[1])
