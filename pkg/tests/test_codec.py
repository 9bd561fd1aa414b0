import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from permclass import automata
from permclass.class_enum import BASIS_A, BASIS_APRIME
from permclass.codec import (
    LPRIME_PREFIXES, SIGMA_A, SIGMA_PRIME, AlphabetError, JoinMismatch, NotInH, NotInHPrime,
    NotInK1, NotInL, NotInLPrime, UnknownAffix, Word, WrongShape, affix_convert,
    check_language, decode_A, encode_A, factor_decode, factor_encode, parse_word, phi_prime,
    psi_prime, w_combine, w_decompose,
)
from permclass.gf_pipeline import MPRIME_INITIAL
from permclass.perm_core import avoids_all, parse
from permclass.simple_decomp import is_simple
from permclass.structure_glue import GlueType, glue_decompose, membership, verify_structure

from conftest import h_members, hprime, n_factors

P = parse
W = parse_word
PI22 = P("2 5 9 3 1 4 8 6 10 12 17 7 11 16 13 15 19 22 20 18 14 21")
W22 = "d d b c a d b a c d c a d b a b d b a b d dl"
PREFIXES = [tuple(s.split()) for s in LPRIME_PREFIXES]


@pytest.fixture(scope="module")
def mprime():
    return automata.load("mprime.txt")


@pytest.fixture(scope="module")
def m_a():
    return automata.load("m.txt")


def split_prefix(w):
    """(i, rest) for the unique L' prefix that starts w."""
    hits = [i for i, pre in enumerate(PREFIXES) if tuple(w[:len(pre)]) == pre]
    assert len(hits) == 1, w
    return hits[0], list(w[len(PREFIXES[hits[0]]):])


# --- class A ---------------------------------------------------------------------------

class TestClassA:
    def test_worked_example(self):
        assert str(encode_A(PI22)) == W22
        assert decode_A(W(W22, SIGMA_A)) == PI22

    def test_small(self):
        assert str(encode_A(P("2413"))) == "d d d dl"
        assert decode_A(W("d d d dl", SIGMA_A)) == P("2413")

    def test_errors(self):
        with pytest.raises(NotInH):
            encode_A(P("3142"))
        with pytest.raises(NotInL) as e:
            decode_A(W("d d b d a b d dl", SIGMA_A))
        assert e.value.condition == "5"

    @pytest.mark.parametrize("n", range(4, 10))
    def test_roundtrip_on_H(self, n):
        words = set()
        for p in h_members(n):
            w = encode_A(p)
            assert len(w) == n and check_language(w, "L").ok
            assert decode_A(w) == p
            words.add(w)
        assert len(words) == len(h_members(n))

    @pytest.mark.parametrize("k", range(0, 8))
    def test_machine_words_decode_into_H(self, m_a, k):
        pats = [P(b) for b in BASIS_A]
        for tail in automata.accepted_words(m_a, k):
            w = Word(("d", "d") + tuple(tail))
            p = decode_A(w)
            assert is_simple(p) and avoids_all(p, pats) and membership(p, "H")
            assert encode_A(p) == w


# --- factors -------------------------------------------------------------------------

class TestFactors:
    def test_examples(self):
        assert str(factor_encode(P("2413"), "N")) == "b a c b"
        assert str(factor_encode(P("25314"), "N")) == "b a b c b"
        assert factor_encode(P("3142"), "S") == factor_encode(P("2413"), "N")
        assert factor_decode(W("b a c b"), "N") == P("2413")

    def test_errors(self):
        with pytest.raises(WrongShape):
            factor_encode(P("3142"), "N")
        with pytest.raises(WrongShape):
            factor_encode(P("2413"), "S")
        with pytest.raises(NotInK1) as e:
            factor_decode(W("b a a c b"), "N")
        assert e.value.condition == "7"

    @pytest.mark.parametrize("n", range(4, 10))
    def test_roundtrip(self, n):
        for p in n_factors(n):
            w = factor_encode(p, "N")
            assert len(w) == n and check_language(w, "K1").ok
            assert factor_decode(w, "N") == p
            s = p.inverse()
            assert factor_encode(s, "S") == w and factor_decode(w, "S") == s


# --- joining and affixes ---------------------------------------------------------

class TestJoin:
    def test_type_1_0(self):
        ws = [W("b a c b"), W("b a c b")]
        assert str(w_combine(ws, [GlueType("NW", 1, 0)])) == "b a d c b"

    def test_mismatch(self):
        with pytest.raises(JoinMismatch) as e:
            w_combine([W("b a c b"), W("b a c b")], [GlueType("NW", 2, 0)])
        assert e.value.index == 1

    def test_type_3_branch(self):
        w = phi_prime(P("2 10 5 1 3 7 4 9 6 11 8"))
        assert str(w) == "d d c c' bs z c\" d y d dl"
        pieces, types = w_decompose(affix_convert(w, "backward"))
        assert types == [GlueType("NW", 3, 0)] and len(pieces) == 2

    def test_single_factor(self):
        pieces, types = w_decompose(W("b a b c b"))
        assert [str(x) for x in pieces] == ["b a b c b"] and types == []

    def test_affix_examples(self):
        assert str(affix_convert(W("b a c b"))) == "d d d dl"
        assert str(affix_convert(W("b a' bs a\" c b"))) == "d da' bs da\" d dl"
        assert affix_convert(W("d d d dl"), "backward") == W("b a c b")
        with pytest.raises(UnknownAffix):
            affix_convert(W("c c b"))

    @pytest.mark.parametrize("n", range(4, 10))
    def test_combine_decompose_roundtrip(self, n):
        for p in hprime(n):
            dec = glue_decompose(p)
            ws = [factor_encode(f, "N" if i % 2 == 0 else "S") for i, f in enumerate(dec.factors)]
            k3 = w_combine(ws, dec.types)
            assert check_language(k3, "K3").ok
            assert affix_convert(affix_convert(k3), "backward") == k3
            pieces, types = w_decompose(k3)
            assert list(types) == list(dec.types)
            # type 3-0 joins lose the front of the right factor (see psi_prime)
            for i, (a, b) in enumerate(zip(pieces, ws)):
                if i == 0 or types[i - 1].x != 3:
                    assert tuple(a) == tuple(b)


# --- phi' and psi' ------------------------------------------------------------------

class TestPhiPrime:
    def test_small(self):
        assert str(phi_prime(P("2413"))) == "d d d dl"
        assert psi_prime("d d d dl") == P("2413")

    def test_errors(self):
        with pytest.raises(NotInHPrime):
            phi_prime(P("3142"))
        with pytest.raises(NotInLPrime):
            psi_prime("d d c d dl")
        with pytest.raises(AlphabetError):
            psi_prime("d d q dl")

    def test_chain_through_previous_join(self):
        p = P("251749638")
        assert len(glue_decompose(p).types) == 2
        assert psi_prime(phi_prime(p)) == p

    @pytest.mark.parametrize("n", range(4, 10))
    def test_bijection(self, mprime, n):
        images = set()
        for p in hprime(n):
            w = phi_prime(p)
            assert len(w) == n
            assert check_language(w, "L_prime").ok
            i, rest = split_prefix(w)
            assert automata.accepts(mprime, rest, MPRIME_INITIAL[i])
            assert check_language(rest, "L_bar_i", i + 1).ok
            assert psi_prime(w) == p
            images.add(w)
        assert len(images) == len(hprime(n))

    @pytest.mark.parametrize("n", range(4, 10))
    def test_machine_words_are_images(self, mprime, n):
        """Every word M' accepts, with its prefix put back, decodes into H'."""
        pats = [P(b) for b in BASIS_APRIME]
        total = 0
        for pre, q in zip(PREFIXES, MPRIME_INITIAL):
            for tail in automata.accepted_words(mprime, n - len(pre), q):
                w = Word(pre + tuple(tail))
                p = psi_prime(w)
                assert phi_prime(p) == w
                assert avoids_all(p, pats) and verify_structure(p).ok
                total += 1
        assert total == len(hprime(n))


# --- language checks ---------------------------------------------------------------

class TestLanguages:
    def test_L_conditions(self):
        assert check_language(W22, "L").ok
        assert check_language("d d b dl d dl", "L").condition == "3"
        assert check_language("d d a d dl", "L").condition == "4"
        assert not check_language("d d d", "L").ok

    def test_L_prime_condition_9(self):
        r = check_language("d d b c d dl", "L_prime")
        assert not r.ok and r.condition == "9"

    def test_report_dict(self):
        r = check_language("d d d dl", "L_prime")
        assert r.to_dict() == {"lang": "L_prime", "ok": True, "condition": None, "detail": ""}

    def test_unknown(self):
        with pytest.raises(ValueError):
            check_language("d d d dl", "K2")

    def test_L_bar_matches_M(self, m_a):
        for k in range(0, 7):
            for w in itertools.product(SIGMA_A, repeat=k):
                assert automata.accepts(m_a, w) == check_language(list(w), "L_bar").ok, w

    @pytest.mark.parametrize("i", range(10))
    def test_L_bar_i_matches_M_prime(self, mprime, i):
        q = MPRIME_INITIAL[i]
        for k in range(0, 6):
            for w in automata.accepted_words(mprime, k, q):
                assert check_language(list(w), "L_bar_i", i + 1).ok, w


# --- text formats ---------------------------------------------------------------------

def test_word_text_and_json():
    w = W("b a' bs a\" c b")
    assert str(w) == "b a' bs a\" c b"
    assert W(w.to_json()) == w
    assert json.loads(w.to_json())[1] == "a'"


tokens = st.lists(st.sampled_from(SIGMA_PRIME), max_size=12).map(Word)


@settings(max_examples=200)
@given(tokens)
def test_checker_never_raises(w):
    for lang in ("K1", "K3", "L_prime"):
        r = check_language(list(w), lang)
        assert r.ok or r.condition is not None


@settings(max_examples=200)
@given(tokens)
def test_L_prime_words_decode(w):
    if check_language(list(w), "L_prime").ok:
        assert phi_prime(psi_prime(w)) == w
