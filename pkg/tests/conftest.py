"""Shared brute-force data, built once per test session."""

from functools import lru_cache

from permclass.class_enum import BASIS_A, BASIS_APRIME, simple_members
from permclass.structure_glue import (
    ConditionViolated, GlueType, VARIANTS, extreme_pattern, glue, membership,
)


@lru_cache(maxsize=None)
def simples_aprime(n):
    return tuple(simple_members(BASIS_APRIME, n))


@lru_cache(maxsize=None)
def hprime(n):
    return tuple(p for p in simples_aprime(n) if membership(p, "H_prime"))


@lru_cache(maxsize=None)
def h_members(n):
    return tuple(p for p in simple_members(BASIS_A, n) if membership(p, "H"))


@lru_cache(maxsize=None)
def n_factors(n):
    """Simple members of A' with extreme pattern 2413."""
    return tuple(p for p in simples_aprime(n) if extreme_pattern(p).kind == "P2413")


@lru_cache(maxsize=None)
def valid_nw_glues(max_len):
    """Every (s, t, type, result) with s a 2413 factor, t a 3142 factor,
    |s| + |t| <= max_len + 5, the table conditions met and |result| <= max_len.

    Types 1 and 2 drop at most 3 points, and 4-0 drops 5 with |s| >= 6 and
    |t| >= 5, so this is every valid input of those types.  A 3-0 sum drops
    l + 3 points, so its longer operands are only reached by decomposing
    every member of H' instead.
    """
    out = []
    for a in range(4, max_len + 1):
        for b in range(4, max_len + 6 - a):
            for s in n_factors(a):
                for t in (f.inverse() for f in n_factors(b)):
                    for v in VARIANTS:
                        g = GlueType("NW", *v)
                        try:
                            r = glue(s, t, g)
                        except ConditionViolated:
                            continue
                        if r.n <= max_len:
                            out.append((s, t, g, r))
    return tuple(out)
