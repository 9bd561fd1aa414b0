import pytest

from permclass import automata
from permclass.automata import (
    AlphabetMismatch, DuplicateTransition, ParseError, accepted_words, accepts,
    count_walks_bruteforce, dump, load, matrix_power_entry, parse_automaton, parse_weights,
    resolvent_column, transfer_series,
)
from permclass.series import PowerSeries, poly_mul, rational

N = 10


@pytest.fixture(scope="module")
def m():
    return load("m.txt")


@pytest.fixture(scope="module")
def mp():
    return load("mprime.txt")


@pytest.fixture(scope="module")
def three():
    return load("three_state.txt")


class TestParse:
    def test_m(self, m):
        assert set(m.states) == {"A", "B", "C", "CD", "D", "Dl"}
        assert m.accepting == {"Dl"} and m.start == "A"

    def test_mprime(self, mp):
        assert len(mp.states) == 83 and mp.accepting == {"Dl"}

    def test_duplicate(self):
        with pytest.raises(DuplicateTransition):
            parse_automaton("@initial A\nA ; b ; B\nA ; b ; C\n")

    def test_malformed(self):
        with pytest.raises(ParseError):
            parse_automaton("@initial A\nA ; b\n")
        with pytest.raises(ParseError):
            parse_automaton("A ; b ; B\n")

    def test_alphabet(self):
        with pytest.raises(AlphabetMismatch):
            parse_automaton("@initial A\nA ; q ; B\n", ["a", "b"])

    @pytest.mark.parametrize("name", ["m.txt", "mprime.txt", "three_state.txt"])
    def test_dump_roundtrip(self, name):
        a = load(name)
        b = parse_automaton(dump(a))
        assert (b.delta, b.initial, b.accepting) == (a.delta, a.initial, a.accepting)
        assert dump(b) == dump(a)

    def test_weights(self):
        w = parse_weights("A ; b ; F\nB ; a ; x\n")
        assert w == {("A", "b"): "F", ("B", "a"): "x"}
        with pytest.raises(DuplicateTransition):
            parse_weights("A ; b ; F\nA ; b ; G\n")

    def test_data_dir_override(self, tmp_path, monkeypatch):
        (tmp_path / "tiny.txt").write_text("@initial A\n@accept B\nA ; a ; B\n")
        monkeypatch.setenv("PERMCLASS_DATA_DIR", str(tmp_path))
        assert accepts(load("tiny.txt"), ["a"])


class TestAccepts:
    def test_examples(self, m):
        assert accepts(m, ["d", "dl"])
        assert not accepts(m, [])
        assert not accepts(m, ["a", "d", "dl"])

    def test_alphabet_mismatch(self, m):
        with pytest.raises(AlphabetMismatch):
            accepts(m, ["z"])

    def test_initial_override(self, mp):
        assert accepts(mp, ["d", "dl"], "A")
        assert not accepts(mp, ["d", "dl"], "B^A")

    def test_accepted_words_agree(self, m):
        for n in range(6):
            words = set(accepted_words(m, n))
            brute = {w for w in __import__("itertools").product(m.alphabet, repeat=n)
                     if accepts(m, w)}
            assert words == brute


class TestTransfer:
    def test_three_state_entry(self, three):
        s = transfer_series(three, None, "A", "C", N)
        assert s.ints()[:5] == [0, 1, 2, 4, 8]

    def test_m_entry(self, m):
        s = transfer_series(m, None, "A", "Dl", N)
        assert s == rational([0, 0, 1], poly_mul([1, -3], [1, 1]), N)

    @pytest.mark.parametrize("name,frm,to", [("three_state.txt", "A", "C"), ("three_state.txt", "B", "B"),
                                             ("m.txt", "A", "Dl"), ("m.txt", "C", "D")])
    def test_coefficients_count_walks(self, name, frm, to):
        a = load(name)
        s = transfer_series(a, None, frm, to, 6).ints()
        for n in range(7):
            assert s[n] == matrix_power_entry(a, frm, to, n) == count_walks_bruteforce(a, frm, to, n)

    def test_nonzero_constant_rejected(self, three):
        with pytest.raises(automata.NonNilpotentConstantTerm):
            transfer_series(three, {"a": PowerSeries([1], 4), "b": PowerSeries([1], 4),
                                    "c": PowerSeries([1], 4)}, "A", "C", 4)

    def test_letter_weights(self, three):
        x = PowerSeries.x(N)
        w = {"a": x, "b": x, "c": 2 * x}
        s = transfer_series(three, w, "A", "C", 6).ints()
        # walks A->C: "c" (2); "b c" (2) and "c c" (4)
        assert s[1] == 2 and s[2] == 6

    def test_column_covers_all_states(self, mp):
        col = resolvent_column(mp, "Dl", None, 6)
        assert set(col) == set(mp.states)
        assert col["Dl"][0] == 1
