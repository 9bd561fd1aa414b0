import itertools
import json

import pytest

from permclass import _kernels
from permclass.class_enum import (
    BASIS_A, BASIS_APRIME, Basis, CountTable, count_class, count_simple_in_class,
    count_skew_indecomposable, generate_class, level_array,
)
from permclass.perm_core import EMPTY, Permutation, apply_symmetry, avoids_all, identity, parse, to_text
from permclass.series import PowerSeries, series_G

G_BASIS = ("4123", "4213", "4132")


def naive(basis, n):
    pats = [parse(b) for b in basis]
    return [Permutation(t) for t in itertools.permutations(range(1, n + 1))
            if avoids_all(t, pats)]


def test_generate_examples():
    assert generate_class(["21"], 5) == [identity(5)]
    assert len(generate_class(["123", "213", "132"], 3)) == 3
    assert generate_class(BASIS_APRIME, 0) == [EMPTY]


def test_count_examples():
    assert count_class(["231"], 5).counts == (1, 1, 2, 5, 14, 42)
    assert count_class(BASIS_APRIME, 9).counts == (1, 1, 2, 6, 24, 115, 607, 3370, 19235, 111571)
    assert count_class(BASIS_A, 8).counts == (1, 1, 2, 6, 23, 101, 477, 2343, 11762)


def test_simple_counts():
    assert count_simple_in_class(["4231", "35142"], 3) == 0
    assert count_simple_in_class(BASIS_A, 4) == 2
    assert count_simple_in_class(BASIS_APRIME, 4) == 2


def test_skew_indecomposable():
    assert count_skew_indecomposable(G_BASIS, 1) == 1
    assert count_skew_indecomposable(G_BASIS, 2) == 1
    x = PowerSeries.x(8)
    want = ((1 - x - x * x) * (series_G(8) - 1)).ints()
    assert [count_skew_indecomposable(G_BASIS, n) for n in range(3, 9)] == want[3:9]


@pytest.mark.parametrize("basis", [("231",), ("4231", "35142"), BASIS_A, BASIS_APRIME])
@pytest.mark.parametrize("n", range(0, 8))
def test_matches_naive_filter(basis, n):
    assert generate_class(basis, n) == sorted(naive(basis, n))


@pytest.mark.parametrize("basis", [BASIS_A, BASIS_APRIME, G_BASIS])
def test_deleting_maximum_stays_in_class(basis):
    for n in range(1, 9):
        prev = set(generate_class(basis, n - 1))
        for p in generate_class(basis, n):
            assert Permutation(v for v in p if v != n) in prev


@pytest.mark.parametrize("op", ["inverse", "reverse", "complement"])
def test_counts_invariant_under_symmetry(op):
    moved = [to_text(apply_symmetry(parse(b), op)) for b in BASIS_APRIME]
    assert count_class(moved, 8).counts == count_class(BASIS_APRIME, 8).counts


def test_larger_basis_pattern_gives_superset():
    # 4231 <= 52341, so Av(4231, ...) is inside Av(52341, ...)
    small = ["4231", "35142"]
    big = ["52341", "35142"]
    for n in range(7):
        assert set(generate_class(small, n)) <= set(generate_class(big, n))


@pytest.mark.parametrize("n", range(0, 10))
def test_backends_agree(n):
    a = level_array(BASIS_APRIME, n, "numpy")
    b = level_array(BASIS_APRIME, n, "numba" if _kernels.HAVE_NUMBA else "numpy")
    assert (a == b).all()


def test_backend_env(monkeypatch):
    monkeypatch.setenv("PERMCLASS_BACKEND", "numpy")
    assert _kernels.backend() == "numpy"


def test_count_table_json():
    t = count_class(["231"], 4)
    d = json.loads(t.to_json())
    assert d == {"basis": ["231"], "counts": [1, 1, 2, 5, 14]}
    assert CountTable.from_json(t.to_json()) == t


def test_comparable_basis_warns():
    with pytest.warns(UserWarning):
        Basis.of(["12", "123"])
