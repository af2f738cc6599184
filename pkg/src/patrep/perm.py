"""Permutations, consecutive-value windows, tail size and leaning.

Permutations and patterns are plain tuples of ints in one-line notation.
Positions exposed by the public functions are 1-based.
"""

from __future__ import annotations

import enum
import itertools
from math import factorial
from typing import Iterator, Optional, Sequence

Perm = tuple[int, ...]


class Leaning(enum.Enum):
    RIGHT = "right"
    LEFT = "left"
    OMNI = "omni"


class PermutationError(ValueError):
    pass


def is_permutation(values: Sequence[int]) -> bool:
    n = len(values)
    return n >= 1 and sorted(values) == list(range(1, n + 1))


def as_perm(values: Sequence[int]) -> Perm:
    perm = tuple(int(v) for v in values)
    if not is_permutation(perm):
        raise PermutationError(f"not a permutation of 1..{len(perm)}: {values!r}")
    return perm


def parse_perm(text: str) -> Perm:
    """Parse ``"125436"`` or ``"10,2,1,..."`` into a permutation tuple."""
    text = text.strip()
    if not text:
        raise PermutationError("empty permutation text")
    try:
        if "," in text:
            values = [int(tok) for tok in text.split(",")]
        else:
            values = [int(ch) for ch in text]
    except ValueError:
        raise PermutationError(f"malformed permutation text: {text!r}") from None
    return as_perm(values)


def format_perm(perm: Sequence[int]) -> str:
    if len(perm) <= 9 and all(1 <= v <= 9 for v in perm):
        return "".join(str(v) for v in perm)
    return ",".join(str(v) for v in perm)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def reverse(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(word))


def all_perms(n: int) -> Iterator[Perm]:
    """S_n in lexicographic order, which is also Lehmer-rank order."""
    return itertools.permutations(range(1, n + 1))


def lehmer_rank(perm: Sequence[int]) -> int:
    n = len(perm)
    rank = 0
    for i, v in enumerate(perm):
        smaller = sum(1 for u in perm[i + 1 :] if u < v)
        rank += smaller * factorial(n - 1 - i)
    return rank


def lehmer_unrank(rank: int, n: int) -> Perm:
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} out of range for n={n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n - 1, -1, -1):
        q, rank = divmod(rank, factorial(i))
        out.append(pool.pop(q))
    return tuple(out)


def pattern_of(window: Sequence[int]) -> Optional[Perm]:
    """Standardize ``window`` if its values are a run of consecutive integers.

    >>> pattern_of((7, 9, 6, 8))
    (2, 4, 1, 3)
    >>> pattern_of((1, 4, 2, 6)) is None
    True
    """
    lo = min(window)
    if max(window) - lo != len(window) - 1 or len(set(window)) != len(window):
        return None
    shift = lo - 1
    return tuple(v - shift for v in window)


def tail_size(word: Sequence[int]) -> int:
    """Smallest k such that the first k letters are the k smallest letters."""
    if not word:
        raise ValueError("tail size of an empty word is undefined")
    ranked = sorted(word)
    seen_max = None
    for k, v in enumerate(word, start=1):
        seen_max = v if seen_max is None or v > seen_max else seen_max
        # the first k letters are the k smallest iff their max is the k-th smallest
        if seen_max == ranked[k - 1]:
            return k
    raise AssertionError("unreachable")


def leaning_of(word: Sequence[int]) -> Leaning:
    # "less than n" is read as less than the word's own length
    m = len(word)
    if tail_size(word) < m:
        return Leaning.RIGHT
    if tail_size(word[::-1]) < m:
        return Leaning.LEFT
    return Leaning.OMNI


def perms_with_leaning(c: int, leaning: Leaning) -> list[Perm]:
    return [p for p in all_perms(c) if leaning_of(p) is leaning]


def hit_windows(w: Sequence[int], c: int) -> list[tuple[int, Perm]]:
    """All size-``c`` windows of ``w`` with consecutive values, as ``(start, pattern)``.

    ``start`` is 1-based.
    """
    n = len(w)
    if not 1 <= c <= n:
        raise ValueError(f"window size {c} out of range for length {n}")
    out = []
    for i in range(n - c + 1):
        pat = pattern_of(w[i : i + c])
        if pat is not None:
            out.append((i + 1, pat))
    return out
