"""Partial deterministic automata read from line-based tables, and the
transfer-matrix series of their weighted adjacency matrices."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .series import PowerSeries

DATA_ENV = "PERMCLASS_DATA_DIR"


class AutomatonError(ValueError):
    pass


class ParseError(AutomatonError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class DuplicateTransition(AutomatonError):
    pass


class AlphabetMismatch(AutomatonError):
    pass


class NonNilpotentConstantTerm(AutomatonError):
    pass


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).with_name("data")


@dataclass
class Automaton:
    states: list
    alphabet: list
    delta: dict  # (state, letter) -> state
    initial: list
    accepting: set
    comments: list = field(default_factory=list)

    @property
    def start(self) -> str:
        return self.initial[0]

    def step(self, state: str, letter: str):
        return self.delta.get((state, letter))

    def run(self, word: Sequence[str], initial: str | None = None):
        """Final state, or None if the run falls into jail."""
        q = initial if initial is not None else self.start
        for a in word:
            if a not in self._letters:
                raise AlphabetMismatch(f"letter {a!r} not in the alphabet")
            q = self.delta.get((q, a))
            if q is None:
                return None
        return q

    @property
    def _letters(self) -> set:
        return set(self.alphabet)

    def transitions(self) -> list:
        return [(s, a, t) for (s, a), t in self.delta.items()]

    def without(self, state: str, letter: str) -> "Automaton":
        """Copy with one transition removed (used by negative controls)."""
        d = dict(self.delta)
        del d[(state, letter)]
        return Automaton(list(self.states), list(self.alphabet), d, list(self.initial),
                         set(self.accepting))


def parse_automaton(text: str, alphabet: Sequence[str] | None = None) -> Automaton:
    """Read `STATE ; LETTER ; NEXT` lines plus @initial/@accept/@states directives."""
    states: list = []
    seen_states: set = set()
    letters: list = []
    delta: dict = {}
    initial: list = []
    accepting: set = set()
    comments: list = []

    def add_state(s):
        if s not in seen_states:
            seen_states.add(s)
            states.append(s)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(raw)
            continue
        if line.startswith("@"):
            key, _, rest = line.partition(" ")
            names = rest.split()
            if key == "@initial":
                initial.extend(names)
            elif key == "@accept":
                accepting.update(names)
            elif key == "@states":
                for s in names:
                    add_state(s)
            else:
                raise ParseError(lineno, f"unknown directive {key}")
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3 or not all(parts):
            raise ParseError(lineno, "expected STATE ; LETTER ; NEXT_STATE")
        s, a, t = parts
        if (s, a) in delta:
            raise DuplicateTransition(f"line {lineno}: second entry for ({s}, {a})")
        delta[(s, a)] = t
        add_state(s)
        add_state(t)
        if a not in letters:
            letters.append(a)
    if not initial:
        raise ParseError(0, "missing @initial")
    for s in list(initial) + sorted(accepting):
        add_state(s)
    if alphabet is not None:
        extra = set(letters) - set(alphabet)
        if extra:
            raise AlphabetMismatch(f"letters outside the alphabet: {sorted(extra)}")
        letters = list(alphabet)
    return Automaton(states, letters, delta, initial, accepting, comments)


def dump(m: Automaton) -> str:
    """Canonical text form (states in declaration order, letters in alphabet order)."""
    out = ["@initial " + " ".join(m.initial), "@accept " + " ".join(sorted(m.accepting)),
           "@states " + " ".join(m.states)]
    sidx = {s: i for i, s in enumerate(m.states)}
    lidx = {a: i for i, a in enumerate(m.alphabet)}
    w = max((len(s) for s in m.states), default=1)
    for (s, a), t in sorted(m.delta.items(), key=lambda kv: (sidx[kv[0][0]], lidx[kv[0][1]])):
        out.append(f"{s.ljust(w)} ; {a.ljust(3)} ; {t}")
    return "\n".join(out) + "\n"


def load(name: str, alphabet: Sequence[str] | None = None) -> Automaton:
    return parse_automaton((data_dir() / name).read_text(), alphabet)


def parse_weights(text: str) -> dict:
    """`STATE ; LETTER ; SYMBOL` lines into {(state, letter): symbol}."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3 or not all(parts):
            raise ParseError(lineno, "expected STATE ; LETTER ; SYMBOL")
        s, a, sym = parts
        if (s, a) in out:
            raise DuplicateTransition(f"line {lineno}: second weight for ({s}, {a})")
        out[(s, a)] = sym
    return out


def load_weights(name: str) -> dict:
    return parse_weights((data_dir() / name).read_text())


def dump_weights(weights: Mapping) -> str:
    return "\n".join(f"{s} ; {a} ; {sym}" for (s, a), sym in weights.items()) + "\n"


def accepts(m: Automaton, word: Sequence[str], initial_override: str | None = None) -> bool:
    q = m.run(word, initial_override)
    return q is not None and q in m.accepting


# --- transfer matrices -------------------------------------------------------

def _weight_fn(weights, N: int) -> Callable:
    if callable(weights):
        return weights
    x = PowerSeries.x(N)

    def f(s, a, t):
        if weights is None:
            return x
        if (s, a) in weights:
            return weights[(s, a)]
        if a in weights:
            return weights[a]
        raise KeyError(f"no weight for ({s}, {a})")

    return f


@dataclass
class TransferMatrix:
    index: list
    entries: dict  # (u, v) -> PowerSeries, absent = 0

    def entry(self, u, v, N: int) -> PowerSeries:
        return self.entries.get((u, v), PowerSeries([0], N))


def transfer_matrix(m: Automaton, weights=None, N: int = 12) -> TransferMatrix:
    """P with P[u][v] = sum of weights of transitions u -> v."""
    f = _weight_fn(weights, N)
    ent: dict = {}
    for (s, a), t in m.delta.items():
        w = f(s, a, t)
        if not isinstance(w, PowerSeries):
            w = PowerSeries([w], N)
        w = w.truncate(N)
        if w[0] != 0:
            raise NonNilpotentConstantTerm(f"weight of ({s}, {a}) has constant term {w[0]}")
        ent[(s, t)] = ent[(s, t)] + w if (s, t) in ent else w
    return TransferMatrix(list(m.states), ent)


def resolvent_column(m: Automaton, to: str, weights=None, N: int = 12) -> dict:
    """Column `to` of (I - P)^-1 as {state: series}.

    Solves v = e_to + P v.  Every entry of P is divisible by x, so each pass
    fixes one more coefficient and N + 1 passes give the exact truncation.
    """
    P = transfer_matrix(m, weights, N)
    rows: dict = {s: [] for s in m.states}
    for (u, v), w in P.entries.items():
        rows[u].append((v, w))
    zero = PowerSeries([0], N)
    unit = PowerSeries([1], N)
    col = {s: (unit if s == to else zero) for s in m.states}
    for _ in range(N + 1):
        nxt = {}
        for s in m.states:
            acc = unit if s == to else zero
            for v, w in rows[s]:
                if col[v] != zero:
                    acc = acc + w * col[v]
            nxt[s] = acc
        if nxt == col:
            break
        col = nxt
    return col


def transfer_series(m: Automaton, weights, frm: str, to: str, N: int = 12) -> PowerSeries:
    """The (frm, to) entry of (I - P)^-1 truncated at x^N."""
    return resolvent_column(m, to, weights, N)[frm]


def matrix_power_entry(m: Automaton, frm: str, to: str, n: int) -> int:
    """Number of length-n transition walks frm -> to (all weights 1)."""
    vec = {s: 0 for s in m.states}
    vec[frm] = 1
    for _ in range(n):
        nxt = {s: 0 for s in m.states}
        for (s, a), t in m.delta.items():
            if vec[s]:
                nxt[t] += vec[s]
        vec = nxt
    return vec[to]


def count_walks_bruteforce(m: Automaton, frm: str, to: str, n: int) -> int:
    """Enumerate all words of length n and count runs frm -> to."""
    return sum(1 for w in product(m.alphabet, repeat=n) if m.run(w, frm) == to)


def accepted_words(m: Automaton, n: int, initial: str | None = None) -> Iterable[tuple]:
    """All accepted words of length n, generated by depth-first search."""
    start = initial if initial is not None else m.start
    out: dict = {}
    for (s, a), t in m.delta.items():
        out.setdefault(s, []).append((a, t))

    def go(q, k, acc):
        if k == 0:
            if q in m.accepting:
                yield tuple(acc)
            return
        for a, t in out.get(q, ()):
            acc.append(a)
            yield from go(t, k - 1, acc)
            acc.pop()

    yield from go(start, n, [])
