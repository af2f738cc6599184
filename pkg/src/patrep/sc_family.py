"""The S_c-equivalence: c-toothed permutations, run structure of roots, T_{c,n}."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Sequence

from .equivalence import DEFAULT_MAX_N, Rearranger, enumerate_classes
from .partition import ReplacementPartition, StraighteningSet, one_part
from .perm import Perm, all_perms, format_perm, identity, tail_size
from .rewrite import straightener


def alpha(c: int) -> Perm:
    return identity(c)


def alpha_hat(c: int) -> Perm:
    return tuple(range(c, 0, -1))


@lru_cache(maxsize=None)
def sc_system(c: int) -> tuple[ReplacementPartition, StraighteningSet]:
    """S_c as one part, straightened towards 12...c and c...21."""
    P = one_part(c)
    return P, StraighteningSet(frozenset({alpha(c), alpha_hat(c)}), P)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def irreducible_blocks(w: Sequence[int]) -> BlockDecomposition:
    """Split ``w`` repeatedly at its tail size."""
    w = tuple(w)
    blocks = []
    while w:
        k = tail_size(w)
        blocks.append(w[:k])
        w = w[k:]
    return BlockDecomposition(tuple(blocks))


def is_c_toothed(w: Sequence[int], c: int) -> bool:
    # block sizes are bounded by c inclusively: 3124657 (first block of 3) is 3-toothed
    sizes = irreducible_blocks(w).sizes
    if any(s > c for s in sizes):
        return False
    for i in range(len(sizes)):
        total = 0
        for s in sizes[i:]:
            total += s
            if total >= c:
                break
        if total == c:
            return True
    return False


def toothed_perms(n: int, c: int) -> set[Perm]:
    return {w for w in all_perms(n) if is_c_toothed(w, c)}


def id_class(n: int, c: int, method: str = "closure", max_n: int = DEFAULT_MAX_N) -> set[Perm]:
    """The S_c-class of 12...n, by rearrangement closure or by the toothed filter."""
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n, got c={c}, n={n}")
    if n > max_n:
        raise ValueError(f"n={n} exceeds the enumeration guard ({max_n})")
    if method == "toothed":
        return toothed_perms(n, c)
    if method != "closure":
        raise ValueError(f"unknown method {method!r}")
    rearr = Rearranger(one_part(c))
    start = identity(n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for q in rearr.neighbors(w):
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def run_decomposition(w: Sequence[int]) -> list[tuple[int, ...]]:
    """Split ``w`` into maximal increasing or decreasing runs of consecutive integers."""
    w = tuple(w)
    if not w:
        return []
    runs = []
    start, step = 0, 0
    for i in range(1, len(w)):
        d = w[i] - w[i - 1]
        if abs(d) == 1 and (step == 0 or d == step):
            step = d
            continue
        runs.append(w[start:i])
        start, step = i, 0
    runs.append(w[start:])
    return runs


def run_class_size(length: int, c: int) -> int:
    """Size of the S_c-class of a monotone consecutive run of ``length`` letters."""
    if length < c:
        return 1
    return t_count(length, c)


def t_count(n: int, c: int) -> int:
    """|T_{c,n}|: closed recurrence for c=3, enumeration otherwise."""
    if c == 3 and n >= 3:
        return _t3_recurrence(n)[n]
    return len(toothed_perms(n, c))


@dataclass
class StructureReport:
    n: int
    c: int
    classes: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _standardize(word: Sequence[int]) -> Perm:
    order = sorted(word)
    rank = {v: i + 1 for i, v in enumerate(order)}
    return tuple(rank[v] for v in word)


def sc_class_structure(n: int, c: int, max_n: int = DEFAULT_MAX_N) -> StructureReport:
    """Check that every S_c-class is the product of the classes of its root's runs."""
    report = StructureReport(n, c)
    if c > n:
        report.classes = sum(1 for _ in all_perms(n))
        return report
    P, C = sc_system(c)
    s = straightener(P, C)
    decomp = enumerate_classes(n, P, max_n=max_n)
    report.classes = len(decomp)
    toothed_cache: dict[int, set[Perm]] = {}

    def in_run_class(word: Sequence[int], run: Sequence[int]) -> bool:
        if len(run) < c:
            return tuple(word) == tuple(run)
        std = _standardize(word)
        if run[0] > run[-1]:
            std = tuple(reversed(std))
        if len(std) not in toothed_cache:
            toothed_cache[len(std)] = toothed_perms(len(std), c)
        return std in toothed_cache[len(std)]

    for cls in decomp.classes:
        roots = {s.normal_form(w) for w in cls.members}
        if len(roots) != 1:
            report.violations.append(f"class of {format_perm(cls.members[0])}: {len(roots)} roots")
            continue
        root = roots.pop()
        runs = run_decomposition(root)
        cuts = [0]
        for run in runs:
            cuts.append(cuts[-1] + len(run))
        for u in cls.members:
            for run, lo, hi in zip(runs, cuts, cuts[1:]):
                piece = u[lo:hi]
                if set(piece) != set(run) or not in_run_class(piece, run):
                    report.violations.append(
                        f"{format_perm(u)} does not factor along root {format_perm(root)}"
                    )
                    break
        expected = prod(run_class_size(len(run), c) for run in runs)
        if expected != cls.size:
            report.violations.append(
                f"class of root {format_perm(root)} has size {cls.size}, runs give {expected}"
            )
    return report


def _t3_recurrence(n_max: int) -> dict[int, int]:
    a = [1, 1, 2]
    while len(a) <= n_max:
        a.append(a[-1] + a[-2] + 3 * a[-3])
    return {n: a[n] - (1 if n % 2 == 0 else 0) for n in range(3, n_max + 1)}


def uncorrected_series_t3(n_max: int) -> dict[int, int]:
    """Coefficients of x/(1-x-x^2-3x^3) - 1/(1-x^2), the uncorrected generating function."""
    f = [0, 1]
    while len(f) <= n_max:
        k = len(f)
        f.append(f[k - 1] + f[k - 2] + 3 * (f[k - 3] if k >= 3 else 0))
    return {n: f[n] - (1 if n % 2 == 0 else 0) for n in range(3, n_max + 1)}


@dataclass
class SequenceTable:
    c: int
    entries: dict[int, dict[str, int]] = field(default_factory=dict)

    def agree(self) -> bool:
        return all(len(set(v.values())) == 1 for v in self.entries.values())

    def value(self, n: int) -> int:
        vals = set(self.entries[n].values())
        if len(vals) != 1:
            raise ValueError(f"methods disagree at n={n}: {self.entries[n]}")
        return vals.pop()

    def rows(self) -> list[dict]:
        methods = sorted({m for v in self.entries.values() for m in v})
        return [
            {"n": n, **{m: self.entries[n].get(m) for m in methods}, "agree": len(set(self.entries[n].values())) == 1}
            for n in sorted(self.entries)
        ]

    def bfile(self) -> str:
        return "".join(f"{n} {self.value(n)}\n" for n in sorted(self.entries))


def t_sequence(c: int, n_max: int, method: str = "bruteforce", n_min: int | None = None, max_n: int = DEFAULT_MAX_N) -> SequenceTable:
    """|T_{c,n}| for n_min <= n <= n_max (n_min defaults to c)."""
    if method not in ("bruteforce", "recurrence", "both"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("recurrence", "both") and c != 3:
        raise ValueError("the recurrence is only known for c = 3")
    n_min = c if n_min is None else n_min
    table = SequenceTable(c)
    if method in ("bruteforce", "both"):
        if n_max > max_n:
            raise ValueError(f"n={n_max} exceeds the enumeration guard ({max_n})")
        for n in range(n_min, n_max + 1):
            table.entries.setdefault(n, {})["bruteforce"] = len(toothed_perms(n, c))
    if method in ("recurrence", "both"):
        rec = _t3_recurrence(n_max)
        for n in range(max(n_min, 3), n_max + 1):
            table.entries.setdefault(n, {})["recurrence"] = rec[n]
    return table
