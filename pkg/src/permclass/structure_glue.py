"""Extreme patterns, interchange sums, chains, glue sums and the
decomposition of simple permutations into alternating glue products."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .class_enum import BASIS_A, BASIS_APRIME
from .perm_core import Permutation, avoids_all, flatten, parse, to_text
from .simple_decomp import _skew_components, _sum_components, is_simple


class GlueError(ValueError):
    pass


class EmptyOperand(GlueError):
    pass


class FamilyMismatch(GlueError):
    pass


class NotInDomain(GlueError):
    pass


class StructureViolation(GlueError):
    pass


class ConditionViolated(GlueError):
    def __init__(self, side: str, clause: str):
        super().__init__(f"{side}: condition {clause} fails")
        self.side = side
        self.clause = clause


def _perm(p) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return parse(p)
    return Permutation(p)


# --- extreme patterns ---------------------------------------------------------

EXTREME_KINDS = ("P2143", "P2413", "P3142", "P3412", "SHORT")


@dataclass(frozen=True)
class ExtremePattern:
    kind: str
    pattern: Permutation

    def __str__(self) -> str:
        return self.kind


def extreme_pattern(p) -> ExtremePattern:
    """Flattening of the first, last, greatest and least entries."""
    p = _perm(p)
    if p.n == 0:
        raise EmptyOperand("extreme pattern of the empty permutation")
    idx = sorted({1, p.n, p.pos(p.n), p.pos(1)})
    pat = flatten([p(i) for i in idx])
    kind = "P" + to_text(pat) if len(pat) == 4 else "SHORT"
    if kind not in EXTREME_KINDS:
        kind = "SHORT" if len(pat) < 4 else kind
    return ExtremePattern(kind, pat)


# --- interchange sums -----------------------------------------------------------

def value_interchange(s, t) -> Permutation:
    """s (+)_1 t: the direct sum with values m and m+1 swapped."""
    s, t = _perm(s), _perm(t)
    if not s or not t:
        raise EmptyOperand("interchange sums need nonempty operands")
    m = len(s)
    out = [m + 1 if v == m else v for v in s]
    out += [m if v == 1 else v + m for v in t]
    return Permutation(out)


def position_interchange(s, t) -> Permutation:
    """s (+)^1 t: the direct sum with positions m and m+1 swapped."""
    s, t = _perm(s), _perm(t)
    if not s or not t:
        raise EmptyOperand("interchange sums need nonempty operands")
    m = len(s)
    tt = [v + m for v in t]
    return Permutation(list(s[:-1]) + [tt[0], s[-1]] + tt[1:])


def interchange_sum(s, t, mode: str = "value") -> Permutation:
    if mode == "value":
        return value_interchange(s, t)
    if mode == "position":
        return position_interchange(s, t)
    raise ValueError(f"unknown mode {mode!r}")


# --- chains ---------------------------------------------------------------------

CHAIN_FAMILIES = ("VALUE_231", "VALUE_312", "POSITION_231", "POSITION_312")
_P21 = Permutation((2, 1))
_P231 = Permutation((2, 3, 1))
_P312 = Permutation((3, 1, 2))


@dataclass(frozen=True)
class ChainSpec:
    family: str
    summands: tuple
    scissor: int | None = None

    def __post_init__(self):
        if self.family not in CHAIN_FAMILIES:
            raise ValueError(f"unknown chain family {self.family!r}")
        core = _P231 if self.family.endswith("231") else _P312
        if not self.summands:
            raise EmptyOperand("a chain needs at least one summand")
        for s in self.summands:
            if Permutation(s) not in (_P21, core):
                raise FamilyMismatch(f"summand {to_text(s)} not allowed in {self.family}")

    @property
    def kind(self) -> str:
        return self.family.split("_")[0]

    @property
    def core(self) -> str:
        return self.family.split("_")[1]

    def pattern(self) -> Permutation:
        op = value_interchange if self.kind == "VALUE" else position_interchange
        acc = Permutation(self.summands[0])
        for s in self.summands[1:]:
            acc = op(acc, s)
        return acc

    def __len__(self) -> int:
        return sum(len(s) for s in self.summands)


def _parse_value(p: tuple, core: Permutation) -> list | None:
    if p == tuple(_P21) or p == tuple(core):
        return [Permutation(p)]
    k_core = len(core)
    for summand, k in ((_P21, 2), (core, k_core)):
        head = tuple(k + 1 if v == k else v for v in summand)
        if len(p) > k and p[:k] == head:
            rest = tuple(1 if v == k else v - k for v in p[k:])
            tail = _parse_value(rest, core)
            if tail is not None:
                return [summand] + tail
    return None


def parse_value_chain(p, core: str = "312") -> ChainSpec | None:
    """Split p into a (+)_1 chain of 21s and core patterns, or None."""
    p = flatten(_perm(p))
    cp = _P312 if core == "312" else _P231
    parts = _parse_value(tuple(p), cp)
    return None if parts is None else ChainSpec("VALUE_" + core, tuple(parts))


def parse_position_chain(p, core: str = "312") -> ChainSpec | None:
    """Position chains are inverses of value chains of the other core."""
    p = flatten(_perm(p))
    other = "231" if core == "312" else "312"
    c = parse_value_chain(p.inverse(), other)
    if c is None:
        return None
    return ChainSpec("POSITION_" + core, tuple(Permutation(s).inverse() for s in c.summands))


def chains_similar(alpha: ChainSpec, beta: ChainSpec) -> bool:
    if alpha.kind != "VALUE" or beta.kind != "POSITION" or alpha.core != beta.core:
        raise FamilyMismatch(f"cannot compare {alpha.family} with {beta.family}")
    return value_interchange(_P21, alpha.pattern()) == position_interchange(beta.pattern(), _P21)


def _last_value_chain(s: Permutation) -> tuple | None:
    """(start index, chain) of the longest 312-value chain ending s after the 1."""
    lo = s.pos(1)
    for start in range(lo, len(s) - 1):
        c = parse_value_chain(s[start:], "312")
        if c is not None:
            return start, c
    return None


def _first_position_chain(t: Permutation) -> ChainSpec | None:
    """Largest 312-position chain made of the values 1..l at positions
    2..l+2 with position l+1 left out."""
    best = None
    for ell in range(2, t.n - 2):
        if ell >= t(t.n):
            break
        want = set(range(2, ell + 3)) - {ell + 1}
        if {t.pos(v) for v in range(1, ell + 1)} != want:
            continue
        seq = [t(k) for k in sorted(want)]
        c = parse_position_chain(seq, "312")
        if c is not None:
            best = c
    return best


# --- glue sums ------------------------------------------------------------------

VARIANTS = ((1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (4, 0))


@dataclass(frozen=True)
class GlueType:
    orientation: str
    x: int
    y: int

    def __post_init__(self):
        if self.orientation not in ("NW", "SE"):
            raise ValueError(f"orientation must be NW or SE, got {self.orientation!r}")
        if (self.x, self.y) not in VARIANTS:
            raise ValueError(f"no glue sum of type {self.x}-{self.y}")

    @classmethod
    def of(cls, g) -> "GlueType":
        if isinstance(g, GlueType):
            return g
        if isinstance(g, str):
            s = g.replace(" ", "").upper()
            o, rest = s[:2], s[2:]
            x, _, y = rest.partition("-")
            return cls(o, int(x), int(y))
        o, x, y = g
        return cls(o, int(x), int(y))

    def dual(self) -> "GlueType":
        return GlueType("SE" if self.orientation == "NW" else "NW", self.x, self.y)

    def __str__(self) -> str:
        return f"{self.orientation}{self.x}-{self.y}"

    def as_list(self) -> list:
        return [self.orientation, self.x, self.y]


def _req(ok: bool, side: str, clause: str):
    if not ok:
        raise ConditionViolated(side, clause)


def _nw_glue(s: Permutation, t: Permutation, x: int, y: int) -> Permutation:
    m, n = len(s), len(t)
    i, j = s.pos(m), t(1)
    if x in (1, 2):
        _req(n >= 3 and j >= 3, "tau", "j>=3")
        _req(t(2) == 1, "tau", "tau(2)=1")
    elif x == 3:
        _req(n >= 6 and j >= 6, "tau", "j>=6")
        _req(t(2) == 3, "tau", "tau(2)=3")
        _req(t(3) == 1, "tau", "tau(3)=1")
    else:
        _req(n >= 5 and j >= 5, "tau", "j>=5")
        _req(t(2) == j - 2, "tau", "tau(2)=j-2")
        _req(t(3) == 1, "tau", "tau(3)=1")

    if x == 1:
        _req(i <= m - 2, "sigma", "i<=m-2")
        _req(s(m) == m - 1, "sigma", "sigma(m)=m-1")
    elif x == 2:
        _req(i <= m - 4, "sigma", "i<=m-4")
        _req(s(i + 2) == m - 1, "sigma", "sigma(i+2)=m-1")
        _req(s(m) == m - 2, "sigma", "sigma(m)=m-2")
    elif x == 3:
        _req(i <= m - 5, "sigma", "i<=m-5")
        _req(s(m - 2) == m - 1, "sigma", "sigma(m-2)=m-1")
        _req(s(m) == m - 2, "sigma", "sigma(m)=m-2")
    else:
        _req(i <= m - 4, "sigma", "i<=m-4")
        _req(s(m - 1) == m - 1, "sigma", "sigma(m-1)=m-1")
        _req(s(m) == m - 3, "sigma", "sigma(m)=m-3")
        _req(s.pos(m - 2) in (i + 1, i + 2), "sigma", "pos(m-2) in {i+1,i+2}")

    if x in (1, 2):
        keep = m - 1 if y == 0 else m
        shift = m - 3 if y == 0 else m - 2
        top = m + j - 3 if y == 0 else m + j - 2
        head = list(s[:keep])
        head[i - 1] = top
        if x == 2:
            # m-1 rides up with m, so the entries of t below j sit one lower
            head[i + 1] = top - 1
            out = head + [v + shift - (v < j) for v in t[2:]]
        else:
            out = head + [v + shift for v in t[2:]]
    elif x == 3:
        found = _last_value_chain(s)
        _req(found is not None, "sigma", "last 312-value chain")
        start, alpha = found
        beta = _first_position_chain(t)
        _req(beta is not None, "tau", "least 312-position chain")
        ell = len(beta)
        _req(len(alpha) == ell and chains_similar(alpha, beta), "pair", "alpha similar to beta")
        h = t(ell + 1)
        head = list(s[: m - 1])
        head[i - 1] = m + (j - ell - 3)
        head[m - 3] = (m - 1) + (h - ell - 2)
        out = head + [v + (m - ell - 3) for v in t[ell + 2:]]
    else:
        # five points are identified: (i, m) with (1, j), (s, m-2) with
        # (2, j-2), the two minima, the two last entries, and m-1 with j-1
        sp = s.pos(m - 2)
        head = list(s[: m - 2])
        head[i - 1] = m + j - 5
        head[sp - 1] = (m - 2) + (j - 5)
        out = head + [v + (m - 5) for v in t[3:]]
    if sorted(out) != list(range(1, len(out) + 1)):
        raise ConditionViolated("pair", "result is a permutation")
    return Permutation(out)


def glue(s, t, g) -> Permutation:
    """NW or SE glue sum of the given type.

    SE sums are defined through (s [-] t)^-1 = s^-1 [+] t^-1.
    """
    s, t = _perm(s), _perm(t)
    g = GlueType.of(g)
    if not s or not t:
        raise EmptyOperand("glue sums need nonempty operands")
    if g.orientation == "NW":
        return _nw_glue(s, t, g.x, g.y)
    try:
        return _nw_glue(s.inverse(), t.inverse(), g.x, g.y).inverse()
    except ConditionViolated as e:
        raise ConditionViolated(e.side, "inverse " + e.clause) from None


def se_glue_table(s, t, g) -> Permutation:
    """SE glue written out directly (types 1-0, 1-1, 2-0, 2-1, 4-0).

    Used only to cross-check the inverse-duality definition.
    """
    s, t = _perm(s), _perm(t)
    g = GlueType.of(g)
    m, n = len(s), len(t)
    i, j = s(m), t.pos(1)
    key = (g.x, g.y)
    if key in ((1, 0), (1, 1)):
        keep, shift = (m - 2, m - 3) if g.y == 0 else (m - 1, m - 2)
        tail = [i if k == j else t(k) + shift for k in range(2, n + 1)]
        return Permutation(list(s[:keep]) + tail)
    if key in ((2, 0), (2, 1)):
        keep, shift = (m - 3, m - 3) if g.y == 0 else (m - 2, m - 2)
        tail = []
        for k in range(2, n + 2):
            if k == j:
                tail.append(i + 2)
            elif k == j + 1:
                tail.append(i)
            elif k < j:
                tail.append(t(k) + shift)
            else:
                tail.append(t(k - 1) + shift)
        return Permutation(list(s[:keep]) + tail)
    if key == (4, 0):
        tail = []
        for k in range(2, n + 1):
            if k == j - 2:
                tail.append(s(m - 2))
            elif k == j:
                tail.append(i)
            else:
                tail.append(t(k) + m - 5)
        return Permutation(list(s[: m - 4]) + tail)
    raise ValueError(f"no direct SE formula for type {g.x}-{g.y}")


def fold(factors: Sequence, types: Sequence) -> Permutation:
    """Glue left to right: ((f1 g1 f2) g2 f3) ..."""
    if len(types) != len(factors) - 1:
        raise ValueError("need exactly one glue type between consecutive factors")
    acc = _perm(factors[0])
    for f, g in zip(factors[1:], types):
        acc = glue(acc, f, g)
    return acc


@dataclass(frozen=True)
class GlueDecomposition:
    factors: tuple
    types: tuple

    @property
    def m(self) -> int:
        return len(self.factors)

    def reglue(self) -> Permutation:
        return fold(self.factors, self.types)

    def to_json(self) -> str:
        return json.dumps({"factors": [to_text(f) for f in self.factors],
                           "types": [GlueType.of(g).as_list() for g in self.types]})

    @classmethod
    def from_json(cls, text: str) -> "GlueDecomposition":
        d = json.loads(text)
        return cls(tuple(parse(f) for f in d["factors"]),
                   tuple(GlueType.of(g) for g in d["types"]))

    def __str__(self) -> str:
        ops = {"NW": "[+]", "SE": "[-]"}
        out = to_text(self.factors[0])
        for f, g in zip(self.factors[1:], self.types):
            out += f" {ops[g.orientation]}{g.x}^{g.y} {to_text(f)}"
        return out


# --- membership and the d-sequence -------------------------------------------

def membership(p, domain: str = "H_prime") -> bool:
    p = _perm(p)
    if p.n < 4 or p(2) == 1:
        return False
    if domain == "H":
        return avoids_all(p, [parse(b) for b in BASIS_A]) and is_simple(p)
    if domain == "H_prime":
        if not 2 <= p(1) <= 4:
            return False
        return avoids_all(p, [parse(b) for b in BASIS_APRIME]) and is_simple(p)
    raise ValueError(f"unknown domain {domain!r}")


def d_sequence(p) -> tuple:
    """d1 = p(1); then alternately the rightmost smaller value and the
    greatest value further left, until a value repeats or none exists."""
    p = _perm(p)
    if not (membership(p, "H_prime") or membership(p, "H")):
        raise NotInDomain(f"{to_text(p)} is not in H or H'")
    d = [p(1)]
    seen = {p(1)}
    while True:
        prev = d[-1]
        if len(d) % 2 == 1:
            cand = [k for k in range(p.n, 0, -1) if p(k) < prev]
            nxt = p(cand[0]) if cand else None
        else:
            left = p[: p.pos(prev) - 1]
            nxt = max(left) if left else None
        if nxt is None or nxt in seen:
            break
        d.append(nxt)
        seen.add(nxt)
    return tuple(d)


@dataclass(frozen=True)
class TraceValues:
    p: int
    q: int
    q_prime: int | None
    r: int
    exit: str
    r_prime: int | None
    case: str
    predicted: GlueType


def trace(p, d: Sequence[int] | None = None) -> TraceValues:
    """Locate where the last NW glue sum joins its two sides.

    Returns p, q, q' and r together with the case letter and the glue type
    that case selects.
    """
    p = _perm(p)
    d = tuple(d) if d is not None else d_sequence(p)
    L = len(d)
    if L < 5 or L % 2 == 0:
        raise NotInDomain("the last glue sum is not a NW sum")
    m = L - 4
    dm1, dm2, dm3 = d[m], d[m + 1], d[m + 2]  # d_{m+1}, d_{m+2}, d_{m+3}
    pd1 = p.pos(dm1)
    after = [k for k in range(pd1 + 1, p.n + 1) if p(k) > dm3]
    if not after:
        raise NotInDomain("no value above d_{m+3} right of d_{m+1}")
    pm = p(after[0])
    if p.pos(pm) == p.n:
        raise NotInDomain("p_m is the last entry")
    u = t1 = p(p.pos(pm) + 1)
    t2 = t1 + 1
    qp = None
    if not (t1 < pm < dm2 and t2 <= p.n and p.pos(t2) < p.pos(t1)):
        q, ex = p(p.pos(pm) - 1), "2"
    else:
        def nxt_after(v):
            k = p.pos(v) + 1
            return p(k) if k <= p.n else p.n + 1

        while nxt_after(t2) < t1 - 1 and p.pos(t2) > pd1:
            t1 = nxt_after(t2)
            t2 = t1 + 1
        # When both exit conditions hold the chain has a scissor on its
        # left, so 4b is tested first.
        if p.pos(t2) < pd1:
            q, qp, ex = u, t2, "4b"
        elif nxt_after(t2) >= t1 - 1:
            q, ex = p(p.pos(t2) - 1), "4a"
        else:
            raise StructureViolation("TRACE loop stopped without an exit condition")
    r = max(p(s) for s in range(1, p.pos(q) + 1) if p(s) < dm3)
    rps = [v for v in range(dm3 + 1, p.n + 1) if p.pos(v) < pd1 and v != dm2]
    rp = rps[0] if len(rps) == 1 else None
    if len(rps) > 1:
        raise StructureViolation("more than one candidate for r'")
    y = 1 if q == r else 0
    if rp is None:
        if ex == "4b":
            case, g = "C", GlueType("NW", 3, 0)
        else:
            case, g = "A", GlueType("NW", 1, y)
    elif rp == dm2 - 1:
        case, g = "B", GlueType("NW", 2, y)
    elif rp == dm2 - 2:
        case, g = "D", GlueType("NW", 4, 0)
    else:
        raise StructureViolation(f"r' = {rp} fits none of the cases")
    return TraceValues(pm, q, qp, r, ex, rp, case, g)


# --- decomposition --------------------------------------------------------------

def _is_factor(p: Permutation, kind: str) -> bool:
    return p.n >= 4 and extreme_pattern(p).kind == kind and is_simple(p)


def _rank_into(vals: Sequence[int], targets: Sequence[int]) -> list:
    order = sorted(vals)
    rank = {v: targets[k] for k, v in enumerate(order)}
    return [rank[v] for v in vals]


def _nw_splits(p: Permutation):
    """Candidate (left, right, type) triples with glue(left, right, type) = p."""
    N = p.n
    out = []
    for (x, y) in VARIANTS:
        for L in range(3, N - 1):
            pre = p[:L]
            if x == 4:
                M = L + 2
                app = [M - 1, M - 3]
            elif y == 1:
                M, app = L, []
            else:
                M = L + 1
                app = [M - 1] if x == 1 else [M - 2]
            if M < 4:
                continue
            targets = sorted(set(range(1, M + 1)) - set(app))
            if len(targets) != L:
                continue
            left = Permutation(_rank_into(pre, targets) + app)
            big = max(pre)
            rest = list(p[L:])
            n_right = N - M + (3 if y == 0 else 2)
            if x in (1, 2):
                j = big - M + (3 if y == 0 else 2)
                head = [j, 1]
            elif x == 4:
                n_right = N - M + 5
                j = big - M + 5
                head = [j, j - 2, 1]
            else:
                found = _last_value_chain(left)
                if found is None:
                    continue
                alpha = found[1]
                ell = len(alpha)
                framed = value_interchange(_P21, alpha.pattern())
                beta = list(framed[: ell - 1]) + [framed[ell]]
                n_right = N - M + ell + 3
                j = big - M + ell + 3
                h = p(M - 2) - (M - 1) + ell + 2
                head = [j] + beta[: ell - 1] + [h, beta[ell - 1]]
            free = sorted(set(range(1, n_right + 1)) - set(head))
            if len(free) != len(rest) or len(set(head)) != len(head):
                continue
            cands = [head + _rank_into(rest, free)]
            for right in cands:
                if sorted(right) != list(range(1, len(right) + 1)):
                    continue
                r = Permutation(right)
                g = GlueType("NW", x, y)
                try:
                    if glue(left, r, g) == p:
                        out.append((left, r, g))
                except ConditionViolated:
                    pass
    return out


@lru_cache(maxsize=4096)
def _decompositions(p: Permutation) -> tuple:
    """Every alternating product equal to p, as (factors, types) pairs."""
    found = []
    if _is_factor(p, "P2413"):
        found.append(((p,), ()))
    for left, right, g in _nw_splits(p):
        if not _is_factor(right, "P3142"):
            continue
        for fs, ts in _decompositions(left):
            if len(fs) % 2 == 1:
                found.append((fs + (right,), ts + (g,)))
    for left_i, right_i, g in _nw_splits(p.inverse()):
        left, right = left_i.inverse(), right_i.inverse()
        if not _is_factor(right, "P2413"):
            continue
        for fs, ts in _decompositions(left):
            if len(fs) % 2 == 0:
                found.append((fs + (right,), ts + (g.dual(),)))
    return tuple(found)


def glue_decompose(p) -> GlueDecomposition:
    """The unique alternating glue product of simple factors equal to p."""
    p = _perm(p)
    if not (membership(p, "H_prime") or membership(p, "H")):
        raise NotInDomain(f"{to_text(p)} is not in H or H'")
    ds = _decompositions(p)
    if not ds:
        raise StructureViolation(f"{to_text(p)} has no glue decomposition")
    if len(ds) > 1:
        raise StructureViolation(f"{to_text(p)} has {len(ds)} glue decompositions")
    fs, ts = ds[0]
    return GlueDecomposition(fs, ts)


# --- structure of the simple members ----------------------------------------------

@dataclass
class StructureReport:
    perm: Permutation
    extreme: str
    in_class: bool
    checks: dict = field(default_factory=dict)
    n_shaped: bool | None = None
    violation: str | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def to_dict(self) -> dict:
        return {"perm": to_text(self.perm), "extreme": self.extreme, "in_class": self.in_class,
                "checks": self.checks, "n_shaped": self.n_shaped, "ok": self.ok,
                "violation": self.violation}


def _components(vals: list, cuts: list) -> list:
    out, lo = [], 0
    for c in cuts:
        out.append(vals[lo:c])
        lo = c
    return out


def _check_2413(p: Permutation) -> dict:
    n = p.n
    pd, pa = p.pos(n), p.pos(1)
    seg = {}
    for k in range(1, n + 1):
        seg[p(k)] = "A" if k < pd else ("B" if k <= pa else "C")
    A = list(p[: pd - 1])
    B = list(p[pd - 1: pa])
    C = list(p[pa:])
    A_parts = _components(A, _sum_components(flatten(A))) if A else []
    B_parts = _components(B, _skew_components(flatten(B)))
    C_parts = _components(C, _sum_components(flatten(C))) if C else []
    res = {}
    res["shape_A"] = all(len(c) == 1 or parse_value_chain(c, "231") is not None for c in A_parts)
    res["shape_B"] = all(len(c) == 1 or (len(c) == 2 and c[0] < c[1]) for c in B_parts)
    res["shape_C"] = all(len(c) == 1 or parse_value_chain(c, "312") is not None for c in C_parts)

    def between(u, w, allowed):
        lo, hi = min(u, w), max(u, w)
        return any(seg[x] in allowed for x in range(lo + 1, hi))

    def adjacent_singletons(parts):
        return [(a[0], b[0]) for a, b in zip(parts, parts[1:]) if len(a) == 1 and len(b) == 1]

    res["clause1"] = all(between(u, w, "BC") for u, w in adjacent_singletons(A_parts))
    res["clause2"] = all(between(u, w, "AC") for u, w in adjacent_singletons(B_parts))
    res["clause3"] = all(between(u, w, "AB") for u, w in adjacent_singletons(C_parts))
    ok4 = True
    for c in A_parts:
        if len(c) > 1:
            lo, hi = min(c), max(c)
            ok4 &= all(seg[x] == "A" for x in range(lo, hi + 1) if x != hi - 1)
            ok4 &= seg.get(hi - 1) == "B"
    res["clause4"] = ok4
    ok5 = True
    for c in C_parts:
        if len(c) > 1:
            lo, hi = min(c), max(c)
            ok5 &= all(seg[x] == "C" for x in range(lo, hi + 1) if x != lo + 1)
            ok5 &= seg.get(lo + 1) == "B"
    res["clause5"] = ok5
    ok6 = True
    for c in B_parts:
        if len(c) == 2:
            inside = list(range(c[0] + 1, c[1]))
            xa = [x for x in inside if seg[x] == "A"]
            xc = [x for x in inside if seg[x] == "C"]
            ok6 &= 1 <= len(inside) <= 4 and len(xa) + len(xc) == len(inside)
            ok6 &= len(xa) <= 2 and len(xc) <= 2
            ok6 &= not xa or not xc or max(xa) < min(xc)
    res["clause6"] = ok6
    res["clause7"] = seg[2] in "AB" and seg[n - 1] in "BC"
    return res


def n_shaped(p) -> bool:
    """Increasing up to the maximum, decreasing down to the minimum, then
    increasing to the end."""
    p = _perm(p)
    pd, pa = p.pos(p.n), p.pos(1)
    if not pd < pa:
        return False
    runs = ((1, pd, 1), (pd, pa, -1), (pa, p.n, 1))
    return all(all((p(k + 1) - p(k)) * sgn > 0 for k in range(a, b)) for a, b, sgn in runs)


def verify_structure(p) -> StructureReport:
    """Check a simple permutation against the structural description of
    the simple members of A' with its extreme pattern."""
    p = _perm(p)
    kind = extreme_pattern(p).kind
    inside = avoids_all(p, [parse(b) for b in BASIS_APRIME])
    rep = StructureReport(p, kind, inside)
    if p.n < 4 or not is_simple(p):
        rep.violation = "not a simple permutation of length >= 4"
        return rep
    if kind == "P3412":
        rep.violation = "extreme pattern 3412"
        return rep
    if kind in ("P2413", "P3142"):
        q = p if kind == "P2413" else p.inverse()
        rep.checks = _check_2413(q)
        rep.n_shaped = n_shaped(q)
        for name, ok in rep.checks.items():
            if not ok:
                rep.violation = name
                break
    else:
        q = p if membership(p, "H_prime") else p.inverse()
        try:
            dec = glue_decompose(q)
            rep.checks = {"glue_decomposition": True, "factors": dec.m}
        except GlueError as e:
            rep.checks = {"glue_decomposition": False}
            rep.violation = f"glue decomposition: {e}"
    if rep.violation is None and not inside:
        rep.violation = "contains a basis pattern"
    return rep
