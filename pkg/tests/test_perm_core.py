import itertools

import pytest
from hypothesis import given, settings, strategies as st

from permclass.perm_core import (
    ATOMIC, DuplicateValue, EMPTY, EmptyPermutation, OutOfRange, Permutation,
    apply_symmetry, avoids_all, combine, contains, extrema, flatten, from_one_line,
    identity, parse, symmetry_class, to_text,
)
from permclass.class_enum import count_class, generate_class

perms = st.integers(0, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)
nonempty = st.integers(1, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


def P(t):
    return parse(t)


class TestConstruction:
    def test_one_line(self):
        assert from_one_line([3, 1, 6, 2, 5, 4]) == P("316254")

    def test_empty(self):
        assert from_one_line([]) == EMPTY
        assert len(EMPTY) == 0

    def test_duplicate(self):
        with pytest.raises(DuplicateValue):
            from_one_line([1, 1])

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            from_one_line([1, 3])

    def test_parse_long(self):
        p = parse("2 10 5 1 3 4 6 7 8 9")
        assert p(2) == 10 and to_text(p) == "2 10 5 1 3 4 6 7 8 9"


class TestSymmetry:
    def test_worked_values(self):
        p = P("316254")
        assert apply_symmetry(p, "inverse") == P("241653")
        assert apply_symmetry(p, "reverse") == P("452613")
        assert apply_symmetry(p, "complement") == P("461523")

    def test_identity_fixed(self):
        assert apply_symmetry(identity(6), "inverse") == identity(6)

    def test_symmetry_class(self):
        want = {P(t) for t in ("316254", "241653", "452613", "461523",
                               "421635", "356142", "325164", "536124")}
        assert symmetry_class(P("316254")) == want

    def test_composition_order(self):
        p = P("316254")
        assert apply_symmetry(p, ["inverse", "reverse"]) == p.inverse().reverse()
        assert apply_symmetry(p, ["reverse", "inverse"]) == p.reverse().inverse()

    @given(perms, st.sampled_from(ATOMIC))
    def test_involution(self, p, op):
        assert apply_symmetry(apply_symmetry(p, op), op) == p

    @given(perms, st.lists(st.sampled_from(ATOMIC), max_size=6))
    def test_composition_matches_stepwise(self, p, ops):
        q = p
        for o in ops:
            q = apply_symmetry(q, o)
        assert apply_symmetry(p, ops) == q


class TestSums:
    def test_worked_sums(self):
        assert combine(P("1342"), P("312")) == P("1342756")
        assert combine(P("1342"), P("312"), "skew_sum") == P("4675312")
        assert combine(P("312"), P("1342")) == P("3124675")

    def test_empty_identity(self):
        assert combine(EMPTY, P("2413")) == P("2413")

    @given(perms, perms)
    def test_lengths(self, s, t):
        for kind in ("sum", "skew_sum"):
            assert len(combine(s, t, kind)) == len(s) + len(t)


class TestFlatten:
    def test_examples(self):
        assert flatten([3, 6, 4]) == P("132")
        assert flatten([9, 2, 5]) == P("312")

    def test_duplicate(self):
        with pytest.raises(DuplicateValue):
            flatten([2, 2])

    @given(perms)
    def test_idempotent(self, p):
        assert flatten(p) == p


class TestContainment:
    def test_examples(self):
        assert contains(P("316254"), P("132"))
        assert not contains(P("316254"), P("4231"))

    @given(perms)
    def test_empty_pattern(self, p):
        assert contains(p, EMPTY)

    @given(perms)
    def test_reflexive(self, p):
        assert contains(p, p)

    @given(perms, perms)
    def test_antisymmetric(self, p, q):
        if len(p) == len(q) and contains(p, q):
            assert p == q

    @given(perms, st.data())
    def test_matches_subsequence_search(self, p, data):
        k = data.draw(st.integers(0, len(p)))
        q = Permutation(data.draw(st.permutations(range(1, k + 1))))
        brute = any(flatten(sub) == q for sub in itertools.combinations(p, k))
        assert contains(p, q) == brute

    @settings(max_examples=60)
    @given(nonempty, st.data())
    def test_transitive(self, p, data):
        k = data.draw(st.integers(0, len(p)))
        idx = sorted(data.draw(st.sets(st.integers(0, len(p) - 1), min_size=k, max_size=k)))
        q = flatten([p[i] for i in idx])
        j = data.draw(st.integers(0, len(q)))
        r = flatten(list(q)[:j])
        assert contains(p, q) and contains(q, r) and contains(p, r)


class TestExtrema:
    def test_worked_example(self):
        p = parse("2 5 9 3 1 4 8 6 10 12 17 7 11 16 13 15 19 22 20 18 14 21")
        lr, rl = extrema(p)
        assert lr == {2, 5, 9, 10, 12, 17, 19, 22}
        assert rl == {1, 4, 6, 7, 11, 13, 14, 21}

    def test_monotone(self):
        assert extrema(identity(5)) == (set(range(1, 6)), set(range(1, 6)))
        assert extrema(P("54321")) == ({5}, {1})

    def test_empty(self):
        with pytest.raises(EmptyPermutation):
            extrema(EMPTY)


BASES = [("123",), ("231",), ("4231", "35142"), ("1324", "2143")]


@pytest.mark.parametrize("basis", BASES)
@pytest.mark.parametrize("op", ATOMIC)
def test_symmetric_bases_count_alike(basis, op):
    moved = [to_text(apply_symmetry(P(b), op)) for b in basis]
    assert count_class(list(basis), 7).counts == count_class(moved, 7).counts


@pytest.mark.parametrize("basis", BASES)
def test_downward_closed(basis):
    pats = [P(b) for b in basis]
    for p in generate_class(list(basis), 7):
        for i in range(len(p)):
            q = flatten(list(p[:i]) + list(p[i + 1:]))
            assert avoids_all(q, pats)
