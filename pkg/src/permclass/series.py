"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Sequence

DEFAULT_ORDER = 12


class SeriesError(ArithmeticError):
    pass


class DivisionByNonUnit(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class NonContraction(SeriesError):
    pass


def _q(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class PowerSeries:
    """c[0] + c[1] x + ... + c[N] x^N  (mod x^(N+1))."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (), order: int = DEFAULT_ORDER):
        cs = [_q(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([c], order)

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([0, 1], order)

    @classmethod
    def poly(cls, coeffs: Sequence, order: int = DEFAULT_ORDER) -> "PowerSeries":
        """Polynomial with coefficients listed from x^0 upward."""
        return cls(coeffs, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{terms}])"

    def ints(self) -> list:
        """Coefficients as Python ints (raises if any is not integral)."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(c.numerator)
        return out

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, order)

    def _lift(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            if other.order != self.order:
                n = min(self.order, other.order)
                return other.truncate(n)
            return other
        return PowerSeries([other], self.order)

    def _pair(self, other):
        o = self._lift(other)
        if o.order != self.order:
            n = min(self.order, o.order)
            return self.truncate(n), o.truncate(n)
        return self, o

    # ring operations
    def __add__(self, other):
        a, b = self._pair(other)
        return PowerSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        a, b = self._pair(other)
        return PowerSeries([x - y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _q(other)
            return PowerSeries([c * v for v in self.coeffs], self.order)
        a, b = self._pair(other)
        n = a.order
        ac, bc = a.coeffs, b.coeffs
        nz_b = [(j, v) for j, v in enumerate(bc) if v]
        out = [Fraction(0)] * (n + 1)
        for i, u in enumerate(ac):
            if not u:
                continue
            for j, v in nz_b:
                if i + j > n:
                    break
                out[i + j] += u * v
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _q(other)
            if c == 0:
                raise DivisionByNonUnit("division by zero")
            return PowerSeries([v / c for v in self.coeffs], self.order)
        a, b = self._pair(other)
        return a * b.reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PowerSeries([1], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> "PowerSeries":
        c = self.coeffs
        if c[0] == 0:
            raise DivisionByNonUnit("constant term of divisor is zero")
        n = self.order
        inv0 = 1 / c[0]
        out = [inv0] + [Fraction(0)] * n
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                if c[j]:
                    s += c[j] * out[k - j]
            out[k] = -s * inv0
        return PowerSeries(out, n)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by x^k."""
        return PowerSeries([0] * k + list(self.coeffs), self.order)

    def sqrt(self) -> "PowerSeries":
        return ps_sqrt(self)

    def compose_poly(self, poly: Sequence) -> "PowerSeries":
        """Evaluate a polynomial (coefficients in PowerSeries or numbers) at self."""
        acc = PowerSeries([0], self.order)
        for c in reversed(list(poly)):
            acc = acc * self + c
        return acc

    def to_json(self) -> str:
        return json.dumps([f"{c.numerator}/{c.denominator}" for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        data = json.loads(text)
        return cls([Fraction(s) for s in data], len(data) - 1)


def ps_arith(lhs: PowerSeries, rhs: PowerSeries, op: str) -> PowerSeries:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


def ps_sqrt(s: PowerSeries) -> PowerSeries:
    """Square root with constant term 1, by the coefficient recurrence."""
    c = s.coeffs
    if c[0] != 1:
        raise NonUnitConstantTerm("sqrt needs constant term 1")
    n = s.order
    r = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = c[k]
        for j in range(1, k):
            acc -= r[j] * r[k - j]
        r[k] = acc / 2
    return PowerSeries(r, n)


def ps_fixed_point(update: Callable[[PowerSeries], PowerSeries], N: int = DEFAULT_ORDER,
                   start: PowerSeries | None = None) -> PowerSeries:
    """Iterate update from start (default 0) until the truncation stabilizes."""
    cur = start if start is not None else PowerSeries([0], N)
    for _ in range(N + 3):
        nxt = update(cur)
        if nxt == cur:
            return cur
        cur = nxt
    raise NonContraction(f"no fixed point after {N + 3} iterations")


def ps_rational_in(numer: Sequence[Sequence], denom: Sequence[Sequence], s: PowerSeries) -> PowerSeries:
    """(sum_i a_i(x) s^i) / (sum_i b_i(x) s^i), a_i and b_i polynomials in x."""
    N = s.order
    top = s.compose_poly([PowerSeries.poly(a, N) for a in numer])
    bot = s.compose_poly([PowerSeries.poly(b, N) for b in denom])
    return top / bot


def rational(numer: Sequence, denom: Sequence, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Expansion of a quotient of polynomials in x."""
    return PowerSeries.poly(numer, N) / PowerSeries.poly(denom, N)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


# --- reference equations ---------------------------------------------------

def catalan(N: int = DEFAULT_ORDER) -> PowerSeries:
    x = PowerSeries.x(N)
    return ps_fixed_point(lambda C: 1 + x * C * C, N)


def fibonacci(N: int = DEFAULT_ORDER) -> PowerSeries:
    """F = 1 + xF + x^2 F."""
    x = PowerSeries.x(N)
    return ps_fixed_point(lambda F: 1 + x * F + x * x * F, N)


def series_G(N: int = DEFAULT_ORDER) -> PowerSeries:
    """G = 1 + xG / (1 - xG^2)."""
    x = PowerSeries.x(N)
    return ps_fixed_point(lambda G: 1 + x * G / (1 - x * G * G), N)


def recurrence_G(N: int) -> list:
    """s_n = s_{n-1} + sum over i+j+k = n-1 of s_i s_j s_k, with i,j <= n-2, k >= 1."""
    s = [1]
    for n in range(1, N + 1):
        tot = s[n - 1]
        for i in range(0, n - 1):
            for j in range(0, n - 1):
                k = n - 1 - i - j
                if 1 <= k <= n - 1:
                    tot += s[i] * s[j] * s[k]
        s.append(tot)
    return s


def catalan_bar_closed(N: int = DEFAULT_ORDER) -> PowerSeries:
    """(1 - 2x - sqrt(1-4x)) / (2x), computed without floating point."""
    M = N + 1
    root = ps_sqrt(PowerSeries.poly([1, -4], M))
    top = PowerSeries.poly([1, -2], M) - root
    # top has zero constant term; divide by 2x by shifting down
    return PowerSeries([c / 2 for c in top.coeffs[1:]], N)
