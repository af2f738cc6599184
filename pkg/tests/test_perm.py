import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from patrep.perm import (
    Leaning,
    PermutationError,
    all_perms,
    format_perm,
    hit_windows,
    identity,
    leaning_of,
    lehmer_rank,
    lehmer_unrank,
    parse_perm,
    pattern_of,
    perms_with_leaning,
    tail_size,
)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple)


def brute_tail_size(word):
    smallest = sorted(word)
    return next(k for k in range(1, len(word) + 1) if set(word[:k]) == set(smallest[:k]))


@pytest.mark.parametrize(
    "window, expected",
    [((7, 9, 6, 8), (2, 4, 1, 3)), ((2, 4, 1, 3), (2, 4, 1, 3)), ((1, 4, 2, 6), None), ((5,), (1,))],
)
def test_pattern_of(window, expected):
    assert pattern_of(window) == expected


def test_tail_size_examples():
    assert tail_size(identity(6)) == 1
    assert tail_size((6, 5, 4, 3, 2, 1)) == 6
    assert tail_size((3, 1, 2, 4, 6, 5, 7)) == 3
    with pytest.raises(ValueError):
        tail_size(())


def test_tail_size_of_word_starting_with_minimum():
    # the one-letter prefix "1" already holds the smallest value
    assert tail_size((1, 4, 2, 3, 8, 5, 7, 6)) == 1
    assert brute_tail_size((1, 4, 2, 3, 8, 5, 7, 6)) == 1


@given(perms)
def test_tail_size_matches_brute_force(w):
    assert tail_size(w) == brute_tail_size(w)


def test_tail_size_of_non_permutation_word():
    assert tail_size((7, 9, 6, 8)) == 4
    assert tail_size((7, 6, 9, 8)) == 2
    assert tail_size((10, 4, 20)) == 2


@pytest.mark.parametrize(
    "word, leaning",
    [
        ((1, 4, 2, 3, 8, 5, 7, 6), Leaning.RIGHT),
        ((6, 7, 5, 8, 3, 2, 4, 1), Leaning.LEFT),
        ((3, 2, 1), Leaning.LEFT),
        ((2, 4, 1, 3), Leaning.OMNI),
        ((3, 1, 4, 2), Leaning.OMNI),
        ((4, 2, 1, 3), Leaning.LEFT),
    ],
)
def test_leaning(word, leaning):
    assert leaning_of(word) is leaning


def test_leaning_sets_of_s3():
    assert set(perms_with_leaning(3, Leaning.RIGHT)) == {(1, 2, 3), (1, 3, 2), (2, 1, 3)}
    assert set(perms_with_leaning(3, Leaning.LEFT)) == {(3, 2, 1), (3, 1, 2), (2, 3, 1)}
    assert perms_with_leaning(3, Leaning.OMNI) == []


def test_omni_s4():
    # omni = no proper prefix and no proper suffix made of the smallest values
    assert set(perms_with_leaning(4, Leaning.OMNI)) == {(2, 4, 1, 3), (3, 1, 4, 2)}


@given(perms)
def test_leaning_mirrors_under_reversal(w):
    mirror = {Leaning.RIGHT: Leaning.LEFT, Leaning.LEFT: Leaning.RIGHT, Leaning.OMNI: Leaning.OMNI}
    assert leaning_of(w[::-1]) is mirror[leaning_of(w)]


def test_hit_windows_examples():
    assert (3, (2, 4, 1, 3)) in hit_windows(parse_perm("157968324"), 4)
    assert (3, (3, 2, 1)) in hit_windows(parse_perm("125436"), 3)
    assert hit_windows(identity(6), 3) == [(i, (1, 2, 3)) for i in range(1, 5)]


@given(perms, st.integers(1, 9))
def test_hit_windows_contain_their_value_interval(w, c):
    if c > len(w):
        return
    for start, pat in hit_windows(w, c):
        window = w[start - 1 : start - 1 + c]
        assert sorted(pat) == list(range(1, c + 1))
        lo, hi = min(window), max(window)
        # every letter whose value falls in the interval sits inside the window
        assert {v for v in w if lo <= v <= hi} == set(window)


def test_parse_and_format():
    assert parse_perm("125436") == (1, 2, 5, 4, 3, 6)
    ten = (10, 2, 1, 3, 4, 5, 6, 7, 8, 9)
    assert parse_perm(format_perm(ten)) == ten
    assert format_perm(ten).startswith("10,2,1")
    for bad in ["1224", "", "0123", "1,3", "12a"]:
        with pytest.raises(PermutationError):
            parse_perm(bad)


def test_lehmer_rank_matches_lexicographic_order():
    for n in range(1, 6):
        for rank, w in enumerate(all_perms(n)):
            assert lehmer_rank(w) == rank
            assert lehmer_unrank(rank, n) == w


def test_all_perms_count():
    assert sum(1 for _ in all_perms(5)) == 120
    assert list(all_perms(3)) == list(itertools.permutations((1, 2, 3)))
