"""Exact class counts by inclusion-exclusion, checked against enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Iterator, Optional

from .equivalence import DEFAULT_MAX_N, enumerate_classes
from .partition import (
    ReplacementPartition,
    StraighteningSet,
    default_straightening_set,
)
from .perm import Leaning, Perm, all_perms, leaning_of
from .rewrite import straightener


def formula_count(n: int, c: int, k: int) -> int:
    """sum_j (-1)^j (n-cj+j)!^2 k^j / (j! (n-cj)!), in exact integers."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n, got c={c}, n={n}")
    total = 0
    for j in range(n // c + 1):
        m = n - (c - 1) * j
        num = factorial(m) ** 2 * k**j
        den = factorial(j) * factorial(n - c * j)
        term, rem = divmod(num, den)
        assert rem == 0, f"non-integral summand at j={j}"
        assert term == comb(m, j) * factorial(m) * k**j
        total += (-1) ** j * term
    return total


def k_for(P: ReplacementPartition) -> int:
    """c! - |P| once P is padded to all of S_c."""
    return factorial(P.c) - len(P.padded())


def k_for_n(P: ReplacementPartition, n: int) -> int:
    """The literal n! - |P| reading, kept for comparison runs."""
    return factorial(n) - len(P.padded())


def max_family_size(c: int) -> int:
    """Largest k with k pairs {a_i, b_i}, a_i in L_c u O_c, b_i in R_c u O_c, all distinct."""
    lean = [leaning_of(p) for p in all_perms(c)]
    lefts = lean.count(Leaning.LEFT)
    rights = lean.count(Leaning.RIGHT)
    omnis = lean.count(Leaning.OMNI)
    best = 0
    for to_a in range(omnis + 1):
        best = max(best, min(lefts + to_a, rights + omnis - to_a))
    return best


def pair_families(c: int, k: int) -> Iterator[ReplacementPartition]:
    """Every partition {a_1,b_1}...{a_k,b_k} of the infinite-family shape.

    Two-element parts only; a part of two omni patterns is produced once.
    """
    pats = list(all_perms(c))
    lean = {p: leaning_of(p) for p in pats}
    a_side = [p for p in pats if lean[p] is not Leaning.RIGHT]
    seen = set()
    for a_choice in itertools.combinations(a_side, k):
        rest = [p for p in pats if lean[p] is not Leaning.LEFT and p not in a_choice]
        for b_choice in itertools.permutations(rest, k):
            P = ReplacementPartition(c, [[a, b] for a, b in zip(a_choice, b_choice)])
            if P not in seen:
                seen.add(P)
                yield P


def easy_family_count(n: int, c: int, k: int) -> int:
    if not 0 <= k <= max_family_size(c):
        raise ValueError(f"no family of {k} disjoint pairs exists for c={c}")
    return formula_count(n, c, k)


def check_overlap_hypothesis(
    P: ReplacementPartition,
    C: Optional[StraighteningSet] = None,
    m_max: Optional[int] = None,
) -> tuple[bool, Optional[Perm]]:
    """Search S_m, c <= m <= m_max, for two overlapping non-straightened P-hits.

    Returns ``(True, None)`` when none exist, else ``(False, witness)``.
    """
    C = C if C is not None else default_straightening_set(P)
    c = P.c
    m_max = 2 * c + 1 if m_max is None else m_max
    s = straightener(P, C)
    for m in range(c, m_max + 1):
        for w in all_perms(m):
            starts = [start for start, _ in s.steps(w)]
            for x, y in zip(starts, starts[1:]):
                if y - x < c:
                    return False, w
    return True, None


@dataclass
class CountRow:
    n: int
    brute: Optional[int]
    formula: Optional[int]
    roots: Optional[int]

    @property
    def agree(self) -> bool:
        vals = [v for v in (self.brute, self.formula, self.roots) if v is not None]
        return len(set(vals)) <= 1

    def as_dict(self) -> dict:
        return {"n": self.n, "brute": self.brute, "formula": self.formula, "roots": self.roots, "agree": self.agree}


_cache: dict[tuple[str, int, str], int] = {}


def brute_count(n: int, P: ReplacementPartition, max_n: int = DEFAULT_MAX_N) -> int:
    key = (P.spec(), n, "brute")
    if key not in _cache:
        _cache[key] = len(enumerate_classes(n, P, max_n=max_n))
    return _cache[key]


def root_count(n: int, P: ReplacementPartition, C: StraighteningSet) -> int:
    """Permutations of size n with no straightening step available."""
    key = (P.spec() + "/" + C.spec(), n, "roots")
    if key not in _cache:
        s = straightener(P, C)
        _cache[key] = sum(1 for w in all_perms(n) if s.is_root(w))
    return _cache[key]


def compare_counts(
    n_range: Iterable[int],
    P: ReplacementPartition,
    C: Optional[StraighteningSet] = None,
    methods: Iterable[str] = ("brute", "formula", "roots"),
    k_reading: str = "c",
    max_n: int = DEFAULT_MAX_N,
) -> list[CountRow]:
    """Class counts per n by enumeration, by formula and by counting roots.

    The formula column is None when the overlap hypothesis fails. The
    partition is padded with singleton parts, which leaves the equivalence
    unchanged.
    """
    methods = set(methods)
    padded = P.padded()
    if C is None:
        C = default_straightening_set(padded)
    elif C.parent != padded:
        C = StraighteningSet(C.members | (padded.support - P.support), padded)
    formula_ok = "formula" in methods and check_overlap_hypothesis(padded, C)[0]
    rows = []
    for n in n_range:
        formula = None
        if formula_ok and n >= P.c:
            k = k_for(padded) if k_reading == "c" else k_for_n(padded, n)
            formula = formula_count(n, P.c, k) if k >= 0 else None
        rows.append(
            CountRow(
                n=n,
                brute=brute_count(n, P, max_n) if "brute" in methods else None,
                formula=formula,
                roots=root_count(n, padded, C) if "roots" in methods else None,
            )
        )
    return rows
