import itertools

import pytest
from hypothesis import given, settings, strategies as st

from permclass.perm_core import Permutation, parse
from permclass.simple_decomp import (
    ArityMismatch, Block, EmptyPart, decomposability, inflate, is_simple,
    proper_nontrivial_blocks, substitution_decompose,
)

P = parse


def all_perms(n):
    return (Permutation(t) for t in itertools.permutations(range(1, n + 1)))


def blocks_cubic(p):
    """Every segment whose value set is an interval, checked directly."""
    n = len(p)
    out = []
    for i in range(n):
        for j in range(i, n):
            vals = set(p[i:j + 1])
            if max(vals) - min(vals) == j - i and 0 < j - i < n - 1:
                out.append(Block((i + 1, j + 1), (min(vals), max(vals))))
    return out


def test_block_examples():
    # [2,3] and [4,6] are the maximal ones; 56 inside 756 is a block too
    segs = [b.segment for b in proper_nontrivial_blocks(P("4127563"))]
    assert segs == [(2, 3), (4, 6), (5, 6)]
    assert proper_nontrivial_blocks(P("25314")) == []
    assert proper_nontrivial_blocks(P("12")) == []


def test_simple_examples():
    assert is_simple(P("25314"))
    assert not is_simple(P("4127563"))
    assert not is_simple(P("1"))
    assert is_simple(P("12")) and is_simple(P("21"))


def test_inflate_examples():
    assert inflate(P("3142"), [P("1"), P("12"), P("312"), P("1")]) == P("4127563")
    assert inflate(P("12"), [P("1"), P("123")]) == P("1234")
    assert inflate(P("2413"), [P("1")] * 4) == P("2413")


def test_inflate_errors():
    with pytest.raises(ArityMismatch):
        inflate(P("12"), [P("1")])
    with pytest.raises(EmptyPart):
        inflate(P("12"), [P("1"), Permutation()])


def test_decompose_examples():
    d = substitution_decompose(P("1234"))
    assert d.skeleton == P("12") and d.parts == (P("1"), P("123"))
    d = substitution_decompose(P("4127563"))
    assert d.skeleton == P("3142") and d.parts == (P("1"), P("12"), P("312"), P("1"))
    d = substitution_decompose(P("25314"))
    assert d.skeleton == P("25314") and all(q == P("1") for q in d.parts)


def test_decomposability_examples():
    assert decomposability(P("1234")) == (True, False)
    assert decomposability(P("231")) == (False, True)
    assert decomposability(P("2413")) == (False, False)
    assert decomposability(P("1")) == (False, False)


@pytest.mark.parametrize("n", range(1, 9))
def test_decompose_inflates_back(n):
    for p in all_perms(n):
        d = substitution_decompose(p)
        assert d.inflate() == p
        if d.skeleton == P("12"):
            assert not decomposability(d.parts[0])[0]
        elif d.skeleton == P("21"):
            assert not decomposability(d.parts[0])[1]
        elif len(d.skeleton) > 1:
            assert is_simple(d.skeleton)


@pytest.mark.parametrize("n", range(1, 9))
def test_simple_iff_no_blocks(n):
    for p in all_perms(n):
        blocks = proper_nontrivial_blocks(p)
        assert blocks == blocks_cubic(p)
        if n >= 2:
            assert is_simple(p) == (blocks == [])


SKELETONS = [P(t) for t in ("2413", "3142", "25314", "41352", "246135")]
parts_st = st.integers(1, 4).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


@settings(max_examples=150)
@given(st.sampled_from(SKELETONS), st.data())
def test_simple_skeleton_recovered(sk, data):
    parts = tuple(data.draw(parts_st) for _ in sk)
    d = substitution_decompose(inflate(sk, parts))
    assert d.skeleton == sk and d.parts == parts
