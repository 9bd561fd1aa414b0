"""Word encodings of simple permutations.

Class A: encode_A / decode_A between H and the language L over
{a, b, c, d, dl}.  Class A': phi_prime / psi_prime between H' and L',
built from per-factor encodings (factor_encode), the join step
(w_combine / w_decompose) and the affix rewrite (affix_convert).

Tokens are spelled as plain strings: a prime is ', a double prime is ",
'_' marks an underline and '^' an overline (so d_^ is d with both), bs is
b with subscript s, da' / dc" carry subscripts, dl is d with subscript l.
Words are tuples of tokens and print as space separated text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .class_enum import BASIS_APRIME
from .perm_core import Permutation, avoids_all, parse, to_text
from .simple_decomp import is_simple
from .structure_glue import (GlueType, _last_value_chain, extreme_pattern, glue,
                             glue_decompose, membership)

SIGMA_A = ("a", "b", "c", "d", "dl")
SIGMA_PRIME = ("a", "a'", 'a"', "b", "bs", "b'", 'b"', "b_", "b^", "c", "c'", 'c"',
               "d", "da'", 'da"', "dc'", 'dc"', "d_", "d^", "d_^", "dl",
               "x", "x'", 'x"', "x_", "y", "y'", 'y"', "y^", "z")
SIGMA_1 = ("a", "a'", 'a"', "b", "bs", "b'", 'b"', "c", "c'", 'c"')
SIGMA_2 = tuple(t for t in SIGMA_PRIME if t not in ("da'", 'da"', "dc'", 'dc"', "dl"))

OVERLINED = ("b^", "y^", "d^", "d_^")
UNDERLINED = ("b_", "d_", "x_", "d_^")


class CodecError(ValueError):
    pass


class NotInH(CodecError):
    pass


class NotInHPrime(CodecError):
    pass


class WrongShape(CodecError):
    pass


class UnknownAffix(CodecError):
    pass


class AlphabetError(CodecError):
    pass


class _LanguageError(CodecError):
    lang = "?"

    def __init__(self, condition: str, detail: str = ""):
        msg = f"word is not in {self.lang}: condition {condition} fails"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.condition = condition
        self.detail = detail


class NotInL(_LanguageError):
    lang = "L"


class NotInK1(_LanguageError):
    lang = "K1"


class NotInK3(_LanguageError):
    lang = "K3"


class NotInLPrime(_LanguageError):
    lang = "L'"


class JoinMismatch(CodecError):
    def __init__(self, index: int, expected_suffix: str, expected_prefix: str):
        super().__init__(f"join {index}: left word must end with {expected_suffix} "
                         f"and right word must begin with {expected_prefix}")
        self.index = index
        self.expected_suffix = expected_suffix
        self.expected_prefix = expected_prefix


# --- words --------------------------------------------------------------------

class Word(tuple):
    """A sequence of letter tokens."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[str] = ()):
        return tuple.__new__(cls, letters)

    def __str__(self) -> str:
        return " ".join(self)

    def to_json(self) -> str:
        return json.dumps(list(self))


def parse_word(text, alphabet: Sequence[str] = SIGMA_PRIME) -> Word:
    """Space separated tokens or a JSON array of tokens."""
    if isinstance(text, Word):
        toks = list(text)
    elif isinstance(text, str):
        s = text.strip()
        toks = json.loads(s) if s.startswith("[") else s.split()
    else:
        toks = list(text)
    bad = [t for t in toks if t not in alphabet]
    if bad:
        raise AlphabetError(f"unknown letters {bad}")
    return Word(toks)


def _w(spec: str) -> list:
    return spec.split()


# --- regular-expression view of words -----------------------------------------

_CHAR = {"a": "a", "a'": "e", 'a"': "f", "b": "b", "bs": "s", "b'": "g", 'b"': "h",
         "b_": "i", "b^": "j", "c": "c", "c'": "k", 'c"': "l", "d": "d", "da'": "m",
         'da"': "n", "dc'": "o", 'dc"': "p", "d_": "q", "d^": "r", "d_^": "t", "dl": "L",
         "x": "x", "x'": "X", 'x"': "u", "x_": "v", "y": "y", "y'": "Y", 'y"': "w",
         "y^": "W", "z": "z"}
_OPS = {"(", ")", "|", "*", "?", "^", "$", ")*", ")?"}


def _rx(spec: str) -> "re.Pattern":
    """Compile a pattern whose tokens are letters or regex operators."""
    out = []
    for tok in spec.split():
        if tok in _OPS:
            out.append(tok.replace("(", "(?:"))
        elif tok.endswith("?") and tok[:-1] in _CHAR:
            out.append(re.escape(_CHAR[tok[:-1]]) + "?")
        else:
            out.append(re.escape(_CHAR[tok]))
    return re.compile("".join(out))


def _s(w: Sequence[str]) -> str:
    return "".join(_CHAR[t] for t in w)


def _covered(s: str, pats: Sequence) -> list:
    """Positions lying inside some match that starts anywhere in s."""
    cov = [False] * len(s)
    for i in range(len(s)):
        for p in pats:
            m = p.match(s, i)
            if m and m.end() > i:
                for k in range(i, m.end()):
                    cov[k] = True
    return cov


def _all_covered(s: str, letters: Sequence[str], pats: Sequence) -> int | None:
    """Index of the first listed letter not covered, or None."""
    chars = {_CHAR[t] for t in letters}
    cov = _covered(s, pats)
    for i, ch in enumerate(s):
        if ch in chars and not cov[i]:
            return i
    return None


@dataclass(frozen=True)
class LanguageReport:
    lang: str
    ok: bool
    condition: str | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"lang": self.lang, "ok": self.ok, "condition": self.condition,
                "detail": self.detail}


_A_CHAIN = "( a' | a' a ) ( a' a\" | a' a\" a )*"
_A_END_K1 = "( bs a\" | b' a\" )"
_A_END_K3 = "( bs a\" | b' a\" | b^ a\" | x' a\" )"
_C_GROUPS = "( c' c\" | c c' c\" )*"
_B_PAIR = "b' ( a\" a? c? c'? | a c? c'? | c c'? | c' ) b\""

K1_PREFIX = _rx("^ ( b a | b b' a | b a' a | b a' bs a\" | b a' b' a\" | b a' a' a\" )")
K1_SUFFIX = _rx("( c b | c b\" b | c c\" b | c' bs c\" b | c' b\" c\" b | c' c\" c\" b ) $")
K1_A = _rx(_A_CHAIN + " " + _A_END_K1)
K1_C = _rx("( c' bs | c' b\" ) " + _C_GROUPS + " ( c\" | c c\" )")
B_PAIR = _rx(_B_PAIR)

K3_PREFIX = _rx("^ ( b a | b b' a | b a' a | b a' bs a\" | b a' b' a\" | b a' a' a\" "
                "| b b^ a | b a' b^ a\" | b x' a | b a' x' a\" )")
K3_SUFFIX = _rx("( c b | c b\" b | c c\" b | c' bs c\" b | c' b\" c\" b | c' c\" c\" b "
                "| c b_ b | c' b_ c\" b | c y\" b | c' y\" c\" b ) $")
K3_A = _rx(_A_CHAIN + " " + _A_END_K3)
K3_C = _rx("( c' bs | c' b\" | c' b_ | c' y\" ) " + _C_GROUPS
           + " ( c\" | c c\" | z c\" | c z c\" )")
_UNDER_END = "( d_ d | d_^ d )"
K3_OVER = {
    "b^": _rx("b^ a\"? a? c? " + _UNDER_END),
    "y^": _rx("y^ a? c? " + _UNDER_END),
    "d^": _rx("d^ d c? ( c'? b_ | z x_ | d_ d | d_^ d )"),
    "d_^": _rx("d_^ d c? ( c'? b_ | z x_ | d_ d | d_^ d )"),
}
_XYZ_V1 = "( z x | z x_ | z c\" | z y\" | x' a\"? a? c? z x\" )"
_XYZ_V2 = "( y | y^ | y' a? c? ( y\" | c' y\" | z y\" ) )"
K3_XYZ = _rx(_XYZ_V1 + " d " + _XYZ_V2)
K3_XYZ_V1 = _rx(_XYZ_V1 + " $")
K3_XYZ_V2 = _rx(_XYZ_V2)
XYZ_LETTERS = ("x", "x'", 'x"', "x_", "y", "y'", 'y"', "y^", "z")


def _xyz_uncovered(s: str) -> int | None:
    """Condition 8, with the y letters held to the part after the d (a y"
    always closes some y') and the x letters to the part before it."""
    side = [set() for _ in s]
    for i in range(len(s)):
        m = K3_XYZ.match(s, i)
        if not m:
            continue
        k = s.index(_CHAR["d"], i)
        if not K3_XYZ_V1.match(s[:k], i):
            continue
        m2 = K3_XYZ_V2.match(s, k + 1)
        for q in range(i, k):
            side[q].add(1)
        for q in range(k + 1, m2.end()):
            side[q].add(2)
    xs = {_CHAR[t] for t in ("x", "x'", 'x"', "x_")}
    ys = {_CHAR[t] for t in ("y", "y'", 'y"', "y^")}
    for q, ch in enumerate(s):
        if ch in xs and 1 not in side[q]:
            return q
        if ch in ys and 2 not in side[q]:
            return q
        if ch == _CHAR["z"] and not side[q]:
            return q
    return None


def _first_bad_factor(s: str, pairs: Sequence[Sequence[str]]) -> str | None:
    for pr in pairs:
        if _s(pr) in s:
            return " ".join(pr)
    return None


def _check_alphabet(w, alphabet, lang) -> LanguageReport | None:
    bad = [t for t in w if t not in alphabet]
    if bad:
        return LanguageReport(lang, False, "0", f"letters outside the alphabet: {bad}")
    return None


def _check_L(w, lang="L") -> LanguageReport:
    w = list(w)
    r = _check_alphabet(w, SIGMA_A, lang)
    if r:
        return r
    full = w if lang == "L" else ["d", "d"] + w
    if full[:2] != ["d", "d"] or full[-2:] != ["d", "dl"] or len(full) < 4:
        return LanguageReport(lang, False, "1", "must begin with d d and end with d dl")
    bad = _first_bad_factor(_s(full), [("a", "a"), ("b", "b"), ("c", "c")])
    if bad:
        return LanguageReport(lang, False, "2", f"contains {bad}")
    if "dl" in full[:-1]:
        return LanguageReport(lang, False, "3", "dl before the last position")
    if full[:3] == ["d", "d", "a"] or full[-3:] == ["c", "d", "dl"]:
        return LanguageReport(lang, False, "4", "begins with d d a or ends with c d dl")
    if _s(["d", "a"]) in _s(full):
        return LanguageReport(lang, False, "5", "contains d a")
    return LanguageReport(lang, True)


def _check_K(w, lang: str) -> LanguageReport:
    """K1 (conditions 1-7) or K3 (conditions 1-9)."""
    k3 = lang == "K3"
    r = _check_alphabet(w, SIGMA_2 if k3 else SIGMA_1, lang)
    if r:
        return r
    s = _s(w)
    if not (K3_PREFIX if k3 else K1_PREFIX).match(s):
        return LanguageReport(lang, False, "1", "prefix")
    if not (K3_SUFFIX if k3 else K1_SUFFIX).search(s):
        return LanguageReport(lang, False, "2", "suffix")
    pa, pc = (K3_A, K3_C) if k3 else (K1_A, K1_C)
    i = _all_covered(s, ("a'", 'a"'), [pa])
    if i is not None:
        return LanguageReport(lang, False, "3", f"a'/a\" at {i}")
    i = _all_covered(s, ("c'", 'c"'), [pc])
    if i is not None:
        return LanguageReport(lang, False, "4", f"c'/c\" at {i}")
    i = _all_covered(s, ("bs",), [pa, pc])
    if i is not None:
        return LanguageReport(lang, False, "5", f"bs at {i}")
    i = _all_covered(s, ("b'", 'b"'), [B_PAIR])
    if i is not None:
        return LanguageReport(lang, False, "6", f"b'/b\" at {i}")
    if not k3:
        bad = _first_bad_factor(s, [("a", "a"), ("b", "b"), ("c", "c")])
        if bad:
            return LanguageReport(lang, False, "7", f"contains {bad}")
        return LanguageReport(lang, True)
    # overlines need a matching underline and vice versa
    under_ok = [False] * len(s)
    for i, t in enumerate(w):
        if t in OVERLINED:
            m = K3_OVER[t].match(s, i)
            if not m:
                return LanguageReport(lang, False, "7", f"{t} at {i}")
    for j, t in enumerate(w):
        if t not in OVERLINED:
            continue
        for e in range(j + 2, len(s) + 1):
            if K3_OVER[t].fullmatch(s, j, e):
                under_ok[e - 1] = True
                if w[e - 1] == "d":
                    under_ok[e - 2] = True
    for i, t in enumerate(w):
        if t in UNDERLINED and not under_ok[i]:
            return LanguageReport(lang, False, "7", f"unmatched {t} at {i}")
    i = _xyz_uncovered(s)
    if i is not None:
        return LanguageReport(lang, False, "8", f"{w[i]} at {i}")
    bad = _first_bad_factor(s, [("a", "a"), ("b", "b"), ("c", "c"), ("d", "a")])
    if bad:
        return LanguageReport(lang, False, "9", f"contains {bad}")
    return LanguageReport(lang, True)


# --- affix tables ---------------------------------------------------------------

PREFIX_TABLE = [
    ("b a", "d d"),
    ("b b' a", "d b' d"),
    ("b a' a", "d a' d"),
    ("b a' bs a\"", "d da' bs da\""),
    ("b a' b' a\"", "d da' b' da\""),
    ("b a' a' a\"", "d da' a' da\""),
    ("b b^ a", "d b^ d"),
    ("b a' b^ a\"", "d da' b^ da\""),
    ("b x' a", "d x' d"),
    ("b a' x' a\"", "d da' x' da\""),
]
SUFFIX_TABLE = [
    ("c b", "d dl"),
    ("c b\" b", "d b\" dl"),
    ("c c\" b", "d c\" dl"),
    ("c' bs c\" b", "dc' bs dc\" dl"),
    ("c' b\" c\" b", "dc' b\" dc\" dl"),
    ("c' c\" c\" b", "dc' c\" dc\" dl"),
    ("c b_ b", "d b_ dl"),
    ("c' b_ c\" b", "dc' b_ dc\" dl"),
    ("c y\" b", "d y\" dl"),
    ("c' y\" c\" b", "dc' y\" dc\" dl"),
]
# The stripped prefixes of L' and the initial states of M' they lead to.
LPRIME_PREFIXES = ("d d", "d da' bs da\"", "d a' d", "d da' a' da\"", "d b' d",
                   "d da' b' da\"", "d x' d", "d da' x' da\"", "d b^ d", "d da' b^ da\"")


def affix_convert(w, direction: str = "forward") -> Word:
    """Rewrite one prefix and one suffix between K3 (forward input) and L'."""
    w = list(w)
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be forward or backward, got {direction!r}")
    fwd = direction == "forward"
    pre = next(((a, b) for a, b in PREFIX_TABLE if w[:len(_w(a if fwd else b))] == _w(a if fwd else b)),
               None)
    suf = next(((a, b) for a, b in SUFFIX_TABLE if w[-len(_w(a if fwd else b)):] == _w(a if fwd else b)),
               None)
    if pre is None:
        raise UnknownAffix(f"no listed prefix at the start of {' '.join(w)!r}")
    if suf is None:
        raise UnknownAffix(f"no listed suffix at the end of {' '.join(w)!r}")
    p_old, p_new = (_w(pre[0]), _w(pre[1])) if fwd else (_w(pre[1]), _w(pre[0]))
    s_old, s_new = (_w(suf[0]), _w(suf[1])) if fwd else (_w(suf[1]), _w(suf[0]))
    if len(p_old) + len(s_old) > len(w):
        raise UnknownAffix("prefix and suffix overlap")
    return Word(p_new + w[len(p_old):len(w) - len(s_old)] + s_new)


def _check_Lprime(w, lang="L_prime") -> LanguageReport:
    w = list(w)
    r = _check_alphabet(w, SIGMA_PRIME, lang)
    if r:
        return r
    if not any(w[:len(_w(b))] == _w(b) for _, b in PREFIX_TABLE):
        return LanguageReport(lang, False, "1", "prefix")
    if not any(w[-len(_w(b)):] == _w(b) for _, b in SUFFIX_TABLE):
        return LanguageReport(lang, False, "2", "suffix")
    try:
        k = list(affix_convert(w, "backward"))
    except UnknownAffix as e:
        return LanguageReport(lang, False, "1", str(e))
    if any(t in ("da'", 'da"') for t in k):
        return LanguageReport(lang, False, "1", "da'/da\" outside the prefix")
    if any(t in ("dc'", 'dc"', "dl") for t in k):
        return LanguageReport(lang, False, "2", "dc'/dc\"/dl outside the suffix")
    bad = _first_bad_factor(_s(w), [("a", "a"), ("b", "b"), ("c", "c"), ("d", "a"),
                                   ("c", "d", "dl")])
    rep = _check_K(k, "K3")
    if not rep.ok and rep.condition not in ("9",):
        return LanguageReport(lang, False, rep.condition, rep.detail)
    if bad or not rep.ok:
        return LanguageReport(lang, False, "9", f"contains {bad}" if bad else rep.detail)
    return LanguageReport(lang, True)


# Prefix rules for the stripped languages L-bar_1 .. L-bar_10.
_LBAR_A_TAIL = "( a' a\" | a' a\" a )* ( bs a\" | b' a\" | b^ a\" | x' a\" )"
_LBAR_XYZ = ("z x\" d ( y | y^ | y' a? c? ( y\" | c' y\" | z y\" ) )")
LBAR_PREFIX = {
    1: _rx("^ ( a' | b | b' | b^ | c | c' | d | dc' | d^ | x' | z )"),
    2: _rx("^ ( a | a' | b | b' | b^ | c | c' | d | dc' | d^ | x' | z )"),
    3: _rx("^ " + _LBAR_A_TAIL),
    4: _rx("^ a? " + _LBAR_A_TAIL),
    5: _rx("^ ( c? c'? b\" | d b\" dl $ | dc' b\" dc\" dl $ )"),
    6: _rx("^ ( a? c? c'? b\" | d b\" dl $ | dc' b\" dc\" dl $ )"),
    7: _rx("^ c? " + _LBAR_XYZ),
    8: _rx("^ a? c? " + _LBAR_XYZ),
    9: _rx("^ c? ( d_ d | d_^ d )"),
    10: _rx("^ a? c? ( d_ d | d_^ d )"),
}


def _check_Lbar_i(w, i: int) -> LanguageReport:
    lang = f"L_bar_{i}"
    w = list(w)
    r = _check_alphabet(w, [t for t in SIGMA_PRIME if t not in ("da'", 'da"')], lang)
    if r:
        return r
    # Short words reach into the converted suffix, so the rule is also
    # tried with the suffix turned back into K3 letters.
    views = [w]
    for a, b in SUFFIX_TABLE:
        if w[-len(_w(b)):] == _w(b):
            views.append(w[:len(w) - len(_w(b))] + _w(a))
            break
    if not any(LBAR_PREFIX[i].match(_s(v)) for v in views):
        return LanguageReport(lang, False, "1", "prefix rule")
    rep = _check_Lprime(_w(LPRIME_PREFIXES[i - 1]) + w, lang)
    if not rep.ok:
        return rep
    return LanguageReport(lang, True)


def check_language(w, lang: str, i: int | None = None) -> LanguageReport:
    """Test w against the numbered conditions of a language.

    lang is one of L, L_bar, K1, K3, L_prime, L_bar_i (then give i in 1..10).
    """
    w = list(parse_word(w, list(_CHAR)) if isinstance(w, str) else w)
    if lang == "L":
        return _check_L(w)
    if lang == "L_bar":
        return _check_L(w, "L_bar")
    if lang in ("K1", "K3"):
        return _check_K(w, lang)
    if lang == "L_prime":
        return _check_Lprime(w)
    if lang == "L_bar_i" or lang.startswith("L_bar_"):
        k = i if i is not None else int(lang.rsplit("_", 1)[1])
        if k not in LBAR_PREFIX:
            raise ValueError("L_bar_i needs i in 1..10")
        return _check_Lbar_i(w, k)
    raise ValueError(f"unknown language {lang!r}")


# --- per-factor encoding ----------------------------------------------------------

def _perm(p) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return parse(p)
    return Permutation(p)


def _require_factor(p: Permutation, kind: str):
    if str(extreme_pattern(p)) != kind:
        raise WrongShape(f"{to_text(p)} does not have extreme pattern {kind[1:]}")
    if not is_simple(p):
        raise WrongShape(f"{to_text(p)} is not simple")
    if not avoids_all(p, [parse(b) for b in BASIS_APRIME]):
        raise WrongShape(f"{to_text(p)} is not in A'")


def _n_encode(s: Permutation) -> list:
    n = s.n
    pn, p1 = s.pos(n), s.pos(1)
    out = []
    for t in range(1, n + 1):
        p = s.pos(t)
        left = s(p - 1) if p > 1 else None
        right = s(p + 1) if p < n else None
        if p < pn:
            if left is not None and left > t:
                out.append("a'")
            elif right is not None and right < t:
                out.append('a"')
            else:
                out.append("a")
        elif p <= p1:
            if right is not None and right > t and t != 1:
                out.append("b'")
            elif left is not None and left < t and t != n:
                out.append('b"')
            else:
                out.append("b")
        else:
            if left is not None and left > t:
                out.append("c'")
            elif right is not None and right < t:
                out.append('c"')
            else:
                out.append("c")
    # a plain b is a scissor when it sits just above a c' or just below an a"
    for k, tok in enumerate(out):
        if tok == "b" and 0 < k < n - 1 and (out[k - 1] == "c'" or out[k + 1] == 'a"'):
            out[k] = "bs"
    return out


def factor_encode(p, shape: str = "N") -> Word:
    """Encode a simple factor of A': shape N (extreme 2413) reads values
    bottom to top, shape S (extreme 3142) encodes the inverse."""
    p = _perm(p)
    if shape == "N":
        _require_factor(p, "P2413")
        return Word(_n_encode(p))
    if shape == "S":
        _require_factor(p, "P3142")
        return Word(_n_encode(p.inverse()))
    raise ValueError(f"shape must be N or S, got {shape!r}")


def _chain_letters(summands: Sequence[str], kind: str) -> list:
    """Letters by value of a value chain built from 21 / core summands."""
    roles = {("a", "21"): ["a'", 'a"'], ("a", "231"): ["a'", "a", 'a"'],
             ("c", "21"): ["c'", 'c"'], ("c", "312"): ["c'", "c", 'c"']}
    acc = list(roles[(kind, summands[0])])
    for sm in summands[1:]:
        t = roles[(kind, sm)]
        acc = acc[:-1] + [t[0], acc[-1]] + t[1:]
    return acc


def _chain_positions(summands: Sequence[str]) -> list:
    """The chain pattern as a permutation (list of values by position)."""
    from .structure_glue import value_interchange
    pats = {"21": (2, 1), "231": (2, 3, 1), "312": (3, 1, 2)}
    acc = Permutation(pats[summands[0]])
    for sm in summands[1:]:
        acc = value_interchange(acc, pats[sm])
    return list(acc)


def _parse_chain(letters: Sequence[str], kind: str) -> list | None:
    core = "231" if kind == "a" else "312"
    target = list(letters)

    def go(prefix):
        cur = _chain_letters(prefix, kind) if prefix else []
        if len(cur) == len(target):
            return prefix if cur == target else None
        if len(cur) > len(target):
            return None
        for sm in ("21", core):
            res = go(prefix + [sm])
            if res is not None:
                return res
        return None

    return go([])


def _balanced_end(w: Sequence[str], start: int, up: str, down: str) -> int:
    bal = 0
    for k in range(start, len(w)):
        if w[k] == up:
            bal += 1
        elif w[k] == down:
            bal -= 1
            if bal == 0:
                return k
    raise NotInK1("3" if up == "a'" else "4", "unbalanced chain")


def _n_decode(w: Sequence[str]) -> Permutation:
    """Place the points of a K1 word; y is the letter index, x is built
    from exact fresh coordinates and the result is flattened."""
    n = len(w)
    xs: list = [None] * n
    xs[0] = Fraction(1)
    Pa, Pb = Fraction(0), Fraction(1)
    Pl = None

    def right_end():
        return max(x for x in xs if x is not None) + 1

    def between(u, v):
        return (u + v) / 2

    k = 1
    mode = "identify"
    while k < n:
        a = w[k]
        if mode == "after_bprime":
            # letters between b' and its b"
            if a == "a":
                xs[k] = between(Pa, Pl)
                Pa = xs[k]
                k += 1
                continue
            if a == "c":
                xs[k] = right_end()
                k += 1
                continue
            if a == 'b"':
                xs[k] = between(Pl, Pb)
                Pb = Pl
                k += 1
                mode = "identify"
                continue
            if a == "c'":
                mode = "identify"
            else:
                raise NotInK1("6", f"unexpected {a} after b'")
        if a == "a'":
            e = _balanced_end(w, k, "a'", 'a"')
            sc = e - 1
            idx = [j for j in range(k, e + 1) if j != sc]
            sm = _parse_chain([w[j] for j in idx], "a")
            if sm is None:
                raise NotInK1("3", "not a 231-value chain")
            pat = _chain_positions(sm)
            m = len(pat)
            for pos, val in enumerate(pat):
                xs[idx[val - 1]] = Pa + (Pb - Pa) * (pos + 1) / (m + 2)
            Pa = Pa + (Pb - Pa) * m / (m + 2)
            xs[sc] = between(Pa, Pb)
            k = e + 1
            if w[sc] == "bs":
                Pb = xs[sc]
            else:
                Pl = xs[sc]
                mode = "after_bprime"
            continue
        if a == "b'":
            xs[k] = between(Pa, Pb)
            Pl = xs[k]
            k += 1
            mode = "after_bprime"
            continue
        if a == "c'":
            e = _balanced_end(w, k, "c'", 'c"')
            sc = k + 1
            idx = [j for j in range(k, e + 1) if j != sc]
            sm = _parse_chain([w[j] for j in idx], "c")
            if sm is None:
                raise NotInK1("4", "not a 312-value chain")
            pat = _chain_positions(sm)
            base = right_end()
            for pos, val in enumerate(pat):
                xs[idx[val - 1]] = base + pos
            if w[sc] == "bs":
                xs[sc] = between(Pa, Pb)
                Pb = xs[sc]
            elif w[sc] == 'b"':
                xs[sc] = between(Pl, Pb)
                Pb = Pl
            else:
                raise NotInK1("4", "chain scissor must be bs or b\"")
            k = e + 1
            continue
        if a in ("a", "b"):
            xs[k] = between(Pa, Pb)
            if a == "a":
                Pa = xs[k]
            else:
                Pb = xs[k]
            k += 1
            continue
        if a == "c":
            xs[k] = right_end()
            k += 1
            continue
        raise NotInK1("5", f"unexpected letter {a}")
    order = sorted(range(n), key=lambda j: xs[j])
    return Permutation(j + 1 for j in order)


def factor_decode(w, shape: str = "N") -> Permutation:
    w = list(parse_word(w, SIGMA_1) if isinstance(w, str) else w)
    rep = _check_K(w, "K1")
    if not rep.ok:
        raise NotInK1(rep.condition, rep.detail)
    p = _n_decode(w)
    if shape == "N":
        return p
    if shape == "S":
        return p.inverse()
    raise ValueError(f"shape must be N or S, got {shape!r}")


# --- joining factor words -----------------------------------------------------------

def _replace_last(w: list, old: str, new: str):
    for k in range(len(w) - 1, -1, -1):
        if w[k] == old:
            w[k] = new
            return
    raise CodecError(f"no {old} to rewrite")


def _replace_first(w: list, old: str, new: str, start: int = 0):
    for k in range(start, len(w)):
        if w[k] == old:
            w[k] = new
            return
    raise CodecError(f"no {old} to rewrite")


def _vtype(g) -> tuple:
    if isinstance(g, GlueType):
        return g.x, g.y
    if isinstance(g, str):
        return GlueType.of(g).x, GlueType.of(g).y
    if len(g) == 3:
        return int(g[1]), int(g[2])
    return int(g[0]), int(g[1])


def _type3_prefix(v: list) -> int | None:
    """Length of a prefix b a' a (a' a" | a' a" a)* (bs|b') a" of v, or None."""
    if v[:3] != ["b", "a'", "a"]:
        return None
    k = 3
    while True:
        if v[k:k + 2] in (["bs", 'a"'], ["b'", 'a"']):
            return k + 2
        if v[k:k + 3] == ["a'", 'a"', "a"]:
            k += 3
        elif v[k:k + 2] == ["a'", 'a"']:
            k += 2
        else:
            return None


def w_combine(words: Sequence, types: Sequence) -> Word:
    """Join factor words left to right according to the glue types."""
    if len(types) != len(words) - 1:
        raise ValueError("need one glue type between consecutive words")
    w = list(words[0])
    for i, (nxt, g) in enumerate(zip(words[1:], types), 1):
        v = list(nxt)
        x, y = _vtype(g)
        if x == 1:
            if w[-2:] != ["c", "b"] or v[:2] != ["b", "a"]:
                raise JoinMismatch(i, "c b", "b a")
            w = (w[:-2] if y == 0 else w[:-1]) + ["d"] + v[2:]
        elif x == 2:
            tail = w[-3:]
            if v[:2] != ["b", "a"] or tail not in (["c", 'b"', "b"], ["c", "b_", "b"],
                                                   ["c", 'y"', "b"]):
                raise JoinMismatch(i, "c b\" b | c b_ b | c y\" b", "b a")
            mid = tail[1]
            w = (w[:-3] if y == 0 else w[:-2]) + ["d_", "d"]
            if mid == 'b"':
                _replace_last(w, "b'", "b^")
            elif mid == 'y"':
                _replace_last(w, "y'", "y^")
            w += v[2:]
        elif x == 3:
            tail = w[-5:]
            ok = (len(tail) == 5 and tail[0] == "c'" and tail[2:] == ["c", 'c"', "b"]
                  and tail[1] in ("bs", 'b"', "b_", 'c"', 'y"'))
            plen = _type3_prefix(v)
            if not ok or plen is None:
                raise JoinMismatch(i, "c' (bs|b\"|b_|c\"|y\") c c\" b", "b a' a v (bs|b') a\"")
            mid = tail[1]
            repl = {"bs": "x", 'b"': 'x"', "b_": "x_", 'c"': 'c"', 'y"': 'y"'}[mid]
            w = w[:-5] + ["z", repl, "d"]
            if mid == 'b"':
                _replace_last(w, "b'", "x'")
            scissor = v[plen - 2]
            rest = v[plen:]
            if scissor == "bs":
                w += ["y"] + rest
            else:
                _replace_first(rest, 'b"', 'y"')
                w += ["y'"] + rest
        elif x == 4:
            tail = w[-4:]
            ok = (len(tail) == 4 and tail[0] == "c'" and tail[2:] == ['c"', "b"]
                  and tail[1] in ("bs", 'b"', "b_", 'y"'))
            if not ok or v[:3] != ["b", "b'", "a"]:
                raise JoinMismatch(i, "c' (bs|b\"|b_|y\") c\" b", "b b' a")
            mid = tail[1]
            w = w[:-4] + (["d^", "d"] if mid == "bs" else ["d_^", "d"])
            if mid == 'b"':
                _replace_last(w, "b'", "b^")
            elif mid == 'y"':
                _replace_last(w, "y'", "y^")
            rest = v[3:]
            _replace_first(rest, 'b"', "b_")
            w += rest
        else:
            raise ValueError(f"unknown glue type {g}")
    return Word(w)


def _last_overlined(w: Sequence[str]) -> int:
    for k in range(len(w) - 1, -1, -1):
        if w[k] in OVERLINED:
            return k
    raise NotInK3("7", "no overlined letter for an underline")


def w_decompose(w) -> tuple:
    """Split a K3 word into factor words and glue types (right to left)."""
    pieces, types, _ = _w_decompose(w)
    return pieces, types


def _w_decompose(w) -> tuple:
    """As w_decompose, also returning for each type 3-0 split the word that
    follows the rebuilt chain prefix (None elsewhere)."""
    w = list(w)
    if "d" not in w:
        return [Word(w)], [], [None]
    pieces = []
    kinds = []
    tails = []
    while "d" in w:
        k = len(w) - 1 - w[::-1].index("d")
        prev = w[k - 1] if k > 0 else None
        rest = w[k + 1:]
        if prev == "d_":
            left = w[:k - 1]
            j = _last_overlined(left)
            over = left[j]
            if over == "b^":
                left[j] = "b'"
                mid = 'b"'
            elif over == "y^":
                left[j] = "y'"
                mid = 'y"'
            else:
                mid = "b_"
            if left and left[-1] == "c":
                left += [mid, "b"]
                kinds.append((2, 1))
            else:
                left += ["c", mid, "b"]
                kinds.append((2, 0))
            pieces.append(["b", "a"] + rest)
            tails.append(None)
        elif k >= 2 and w[k - 2] == "z" and prev in ("x", 'x"', "x_", 'c"', 'y"'):
            v = list(rest)
            if not v:
                raise NotInK3("8", "nothing after z s d")
            if v[0] == "y":
                v = ["bs", 'a"'] + v[1:]
            elif v[0] == "y'":
                v = ["b'", 'a"'] + v[1:]
                _replace_first(v, 'y"', 'b"', 2)
            else:
                raise NotInK3("8", "z s d must be followed by y or y'")
            tails.append(v)
            left = w[:k - 2]
            if prev == 'c"':
                # rebuild the matching position chain from the value chain
                zi = k - 2
                st = zi - 1
                if st >= 0 and left[st] == "c":
                    st -= 1
                groups = []
                while True:
                    if st >= 1 and left[st] == 'c"' and left[st - 1] == "c'":
                        if st >= 2 and left[st - 2] == "c":
                            groups.append("cc'c\"")
                            st -= 3
                        else:
                            groups.append("c'c\"")
                            st -= 2
                        continue
                    if st >= 1 and left[st - 1] == "c'" and left[st] in ("bs", 'b"', "b_", 'y"'):
                        break
                    raise NotInK3("4", "no value chain before z c\"")
                u = ["b", "a'", "a"]
                for gname in reversed(groups):
                    u += ["a'", 'a"'] + (["a"] if gname.startswith("cc") else [])
                if w[zi - 1] == "c":
                    u += ["a'", 'a"', "a"]
                else:
                    u += ["a'", 'a"']
                pieces.append(u + v)
            else:
                pieces.append(["b", "a'", "a"] + v)
            mid = {"x": "bs", 'x"': 'b"', "x_": "b_", 'c"': 'c"', 'y"': 'y"'}[prev]
            left = list(left)
            if prev == 'x"':
                _replace_last(left, "x'", "b'")
            left += ["c'", mid, "c", 'c"', "b"]
            kinds.append((3, 0))
        elif prev in ("d^", "d_^"):
            v = list(rest)
            _replace_first(v, "b_", 'b"')
            pieces.append(["b", "b'", "a"] + v)
            tails.append(None)
            left = w[:k - 1]
            if prev == "d^":
                left += ["c'", "bs", 'c"', "b"]
            else:
                j = _last_overlined(left)
                over = left[j]
                if over == "b^":
                    left[j] = "b'"
                    left += ["c'", 'b"', 'c"', "b"]
                elif over == "y^":
                    left[j] = "y'"
                    left += ["c'", 'y"', 'c"', "b"]
                else:
                    left += ["c'", "b_", 'c"', "b"]
            kinds.append((4, 0))
        else:
            left = w[:k]
            if left and left[-1] == "c":
                left += ["b"]
                kinds.append((1, 1))
            else:
                left += ["c", "b"]
                kinds.append((1, 0))
            pieces.append(["b", "a"] + rest)
            tails.append(None)
        w = left
    pieces.append(w)
    tails.append(None)
    pieces.reverse()
    kinds.reverse()
    tails.reverse()
    types = [GlueType("NW" if i % 2 == 0 else "SE", x, y) for i, (x, y) in enumerate(kinds)]
    return [Word(p) for p in pieces], types, tails


# --- class A' ------------------------------------------------------------------------

def phi_prime(p) -> Word:
    p = _perm(p)
    if not membership(p, "H_prime"):
        raise NotInHPrime(f"{to_text(p)} is not in H'")
    dec = glue_decompose(p)
    words = [factor_encode(f, "N" if i % 2 == 0 else "S") for i, f in enumerate(dec.factors)]
    return affix_convert(w_combine(words, dec.types), "forward")


def psi_prime(w) -> Permutation:
    w = list(parse_word(w) if isinstance(w, str) else w)
    rep = _check_Lprime(w)
    if not rep.ok:
        raise NotInLPrime(rep.condition, rep.detail)
    words, types, tails = _w_decompose(affix_convert(w, "backward"))
    acc = factor_decode(words[0], "N")
    for i, g in enumerate(types, 1):
        word = words[i]
        if tails[i] is not None:
            # The left chain may run back through earlier joins, so its
            # length is read off the glued permutation, not the word.
            frame = acc if g.orientation == "NW" else acc.inverse()
            found = _last_value_chain(frame)
            if found is None:
                raise NotInLPrime("4", "no 312-value chain at a type 3-0 join")
            word = ["b", "a'", "a"]
            for sm in found[1].summands[:-1]:
                word += ["a'", 'a"'] if len(sm) == 2 else ["a'", 'a"', "a"]
            word += tails[i]
        f = factor_decode(word, "N" if i % 2 == 0 else "S")
        acc = glue(acc, f, g)
    return acc


# --- class A -------------------------------------------------------------------------

def encode_A(p) -> Word:
    """phi: H -> L.  Class A members glue only with types 1-0 and 1-1, and
    their factor words use the plain letters a, b, c."""
    p = _perm(p)
    if not membership(p, "H"):
        raise NotInH(f"{to_text(p)} is not in H")
    w = phi_prime(p)
    if any(t not in SIGMA_A for t in w):
        raise CodecError(f"{to_text(p)} encodes outside the class A alphabet")
    return w


def decode_A(w) -> Permutation:
    """psi: L -> H, drawing points section by section.

    N sections (odd) stack points upward: a and b between the running
    left and right markers, c to the far right.  S sections (even) are
    the transpose: points march rightward, a and b between the running
    lower and upper markers, c on top.
    """
    w = list(parse_word(w, SIGMA_A) if isinstance(w, str) else w)
    rep = _check_L(w)
    if not rep.ok:
        raise NotInL(rep.condition, rep.detail)
    n = len(w)
    pts: list = [None] * n
    # the first d is d2 = 1 at x = 2, the second is d1 = 2 at x = 1
    pts[0] = (Fraction(2), Fraction(1))
    pts[1] = (Fraction(1), Fraction(2))
    Pa, Pb, Pc = pts[1], pts[0], pts[0]
    sec = 1

    def top(axis):
        return max(q[axis] for q in pts if q is not None) + 1

    def mid(u, v):
        return (u + v) / 2

    last_d = n - 2
    for k in range(2, n):
        a = w[k]
        odd = sec % 2 == 1
        if a in ("a", "b", "c"):
            if odd:
                pt = (mid(Pa[0], Pb[0]), top(1)) if a != "c" else (top(0), top(1))
            else:
                pt = (top(0), mid(Pa[1], Pb[1])) if a != "c" else (top(0), top(1))
            pts[k] = pt
            if a == "a":
                Pa = pt
            elif a == "b":
                Pb = pt
            else:
                Pc = pt
        elif a == "d" and k == last_d:
            pts[k] = (top(0), top(1))
            Pc = pts[k]
        elif a == "d":
            if odd:
                t_old = top(1) - 1
                pts[k] = (mid(Pa[0], Pb[0]), top(1))
                Pa = (Pc[0], t_old)
            else:
                t_old = top(0) - 1
                pts[k] = (top(0), mid(Pa[1], Pb[1]))
                Pa = (t_old, Pc[1])
            Pb = Pc = pts[k]
            sec += 1
        elif a == "dl":
            if odd:
                pts[k] = (mid(Pa[0], Pb[0]), top(1))
            else:
                pts[k] = (top(0), mid(Pa[1], Pb[1]))
    order = sorted(range(n), key=lambda j: pts[j][0])
    ys = sorted(range(n), key=lambda j: pts[j][1])
    rank = {j: r + 1 for r, j in enumerate(ys)}
    return Permutation(rank[j] for j in order)
