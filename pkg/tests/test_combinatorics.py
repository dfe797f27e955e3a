from itertools import permutations as iperms

import pytest
from hypothesis import given, strategies as st

from uvtsw.combinatorics import (
    Partition, Permutation, StandardTableau, all_standard_tableaux, conjugate, hook,
    num_standard_tableaux, partitions, standard_tableaux,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15]


def brute_force_syt(lam):
    k = lam.size
    count = 0
    for perm in iperms(range(1, k + 1)):
        rows, pos = [], 0
        for p in lam:
            rows.append(perm[pos:pos + p])
            pos += p
        try:
            StandardTableau(rows)
        except ValueError:
            continue
        count += 1
    return count


@pytest.mark.parametrize("k", range(1, 8))
def test_partition_counts(k):
    ps = partitions(k)
    assert len(ps) == PARTITION_COUNTS[k]
    assert len(set(ps)) == len(ps)
    assert all(p.size == k for p in ps)


@pytest.mark.parametrize("lam", [lam for k in range(1, 6) for lam in partitions(k)], ids=str)
def test_hook_formula_matches_enumeration(lam):
    assert num_standard_tableaux(lam) == brute_force_syt(lam) == len(standard_tableaux(lam))


def test_k4_has_ten_tableaux():
    assert sum(1 for _ in all_standard_tableaux(4)) == 10
    assert sum(num_standard_tableaux(lam) ** 2 for lam in partitions(4)) == 24


def test_hooks():
    lam = Partition((3, 1))
    assert [hook(lam, c) for c in lam.cells()] == [4, 2, 1, 1]
    assert conjugate(lam) == Partition((2, 1, 1))


def test_invalid_inputs():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        StandardTableau([[1, 3], [2, 4], [5, 0]])
    with pytest.raises(ValueError):
        StandardTableau([[2, 1]])


def test_tableau_text():
    T = StandardTableau([[1, 2], [3]])
    assert str(T) == "[[1,2],[3]]"
    assert StandardTableau.parse(str(T)) == T
    assert T.remove_largest() == StandardTableau([[1, 2]])
    assert T.content_exponents() == [0, -2, 2]


@given(st.permutations(range(1, 6)))
def test_reduced_word_reconstructs(images):
    w = Permutation(images)
    word = w.reduced_word()
    assert len(word) == w.length()
    u = Permutation.identity(5)
    for i in word:
        u = u.times_simple(i)
    assert u == w
