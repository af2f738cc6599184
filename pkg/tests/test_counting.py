from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from patrep.counting import (
    brute_count,
    check_overlap_hypothesis,
    compare_counts,
    easy_family_count,
    formula_count,
    k_for,
    max_family_size,
    pair_families,
)
from patrep.partition import parse_partition
from patrep.perm import parse_perm


def test_formula_examples():
    assert formula_count(3, 3, 1) == 5
    assert formula_count(4, 3, 1) == 20
    assert formula_count(3, 3, 2) == 4


@given(st.integers(1, 12), st.integers(1, 5))
def test_formula_with_k0_is_factorial(n, c):
    if c <= n:
        assert formula_count(n, c, 0) == factorial(n)


@given(st.integers(3, 15), st.integers(0, 5))
def test_formula_decreases_in_k(n, k):
    assert formula_count(n, 3, k + 1) <= formula_count(n, 3, k)


def test_formula_rejects_bad_input():
    with pytest.raises(ValueError):
        formula_count(5, 3, -1)
    with pytest.raises(ValueError):
        formula_count(2, 3, 1)


def test_k_for_pads_partition():
    assert k_for(parse_partition("123,321")) == 1
    assert k_for(parse_partition("123,321|132,213")) == 2


def test_max_family_size():
    assert max_family_size(3) == 3
    assert max_family_size(4) == 12


def test_pair_family_counts():
    assert sum(1 for _ in pair_families(3, 1)) == 9
    assert sum(1 for _ in pair_families(3, 2)) == 18
    for P in pair_families(3, 2):
        assert all(len(part) == 2 for part in P.parts)


def test_easy_family_rejects_oversize():
    with pytest.raises(ValueError):
        easy_family_count(5, 3, 4)


def test_overlap_hypothesis():
    assert check_overlap_hypothesis(parse_partition("123,321")) == (True, None)
    ok, witness = check_overlap_hypothesis(parse_partition("123,132,213"))
    assert not ok and witness == parse_perm("1324")


def test_compare_counts_agrees():
    rows = compare_counts(range(3, 7), parse_partition("123,321"))
    assert [r.brute for r in rows] == [5, 20, 102, 626]
    assert all(r.agree and r.formula == r.brute for r in rows)


def test_compare_counts_drops_formula_when_hypothesis_fails():
    rows = compare_counts(range(3, 6), parse_partition("123,132,213"))
    assert all(r.formula is None for r in rows)
    assert [r.brute for r in rows] == [brute_count(n, parse_partition("123,132,213")) for n in range(3, 6)]


def test_k_reading_n_disagrees():
    rows = compare_counts([4], parse_partition("123,321"), methods=("brute", "formula"), k_reading="n")
    assert rows[0].formula != rows[0].brute
