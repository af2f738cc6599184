"""Hit polarization, straightening and normal forms."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence

from .partition import ReplacementPartition, StraighteningSet
from .perm import Leaning, Perm, format_perm, leaning_of, pattern_of


class Polarization(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class NotAHit(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    def __init__(self, start: Perm, budget: int):
        super().__init__(f"no normal form for {format_perm(start)} within {budget} steps")
        self.start = start
        self.budget = budget


_MATCHING = {Polarization.LEFT: Leaning.LEFT, Polarization.RIGHT: Leaning.RIGHT}


def _polarization0(w: Sequence[int], i: int, c: int) -> Polarization:
    n = len(w)
    if c == n:
        return Polarization.LEFT
    # the collapsed letter has value s/c; compare c*x against s to stay in integers
    s = sum(w[i : i + c])
    left = w[i - 1] if i > 0 else None
    right = w[i + c] if i + c < n else None
    if left is not None and (right is None or abs(c * left - s) <= abs(c * right - s)):
        return Polarization.RIGHT if c * left < s else Polarization.LEFT
    return Polarization.RIGHT if c * right > s else Polarization.LEFT


def polarization(w: Sequence[int], start: int, c: int) -> Polarization:
    """Polarization of the size-``c`` hit at 1-based ``start``."""
    i = start - 1
    if not 0 <= i <= len(w) - c or pattern_of(w[i : i + c]) is None:
        raise NotAHit(f"window at {start} of size {c} in {format_perm(w)} is not a hit")
    return _polarization0(w, i, c)


def is_forward(leaning: Leaning, pol: Polarization) -> bool:
    return leaning is _MATCHING[pol]


@dataclass(frozen=True)
class Hit:
    host: Perm
    start: int
    span: int
    pattern: Perm
    leaning: Leaning
    polarization: Polarization

    @property
    def forward(self) -> bool:
        return is_forward(self.leaning, self.polarization)

    @property
    def positions(self) -> range:
        return range(self.start, self.start + self.span)

    def overlaps(self, other: "Hit") -> bool:
        return self.start < other.start + other.span and other.start < self.start + self.span


def hits(w: Sequence[int], c: int, P: Optional[ReplacementPartition] = None) -> list[Hit]:
    """Every size-``c`` hit of ``w`` (only P-hits when ``P`` is given), left to right."""
    w = tuple(w)
    out = []
    for i in range(len(w) - c + 1):
        pat = pattern_of(w[i : i + c])
        if pat is None or (P is not None and pat not in P.index):
            continue
        out.append(Hit(w, i + 1, c, pat, leaning_of(pat), _polarization0(w, i, c)))
    return out


class Straightener:
    """(P, C)-straightening compiled into a lookup table.

    For every part and polarization there is exactly one straightened
    arrangement: the C-member whose leaning matches the polarization if the
    part has one, otherwise the C-member the part is stuck with.
    """

    def __init__(self, P: ReplacementPartition, C: StraighteningSet):
        if C.parent != P:
            raise ValueError("straightening set belongs to a different partition")
        self.P = P
        self.C = C
        self.c = P.c
        self._target: dict[Perm, tuple[Perm, Perm]] = {}
        for part in P.parts:
            chosen = [p for p in part if p in C.members]
            targets = []
            for pol in (Polarization.LEFT, Polarization.RIGHT):
                matching = [p for p in chosen if leaning_of(p) is _MATCHING[pol]]
                pick = matching if matching else chosen
                assert len(pick) == 1, f"ambiguous straightening target in {part}"
                targets.append(pick[0])
            for pat in part:
                self._target[pat] = (targets[0], targets[1])

    def target(self, pattern: Perm, pol: Polarization) -> Perm:
        left, right = self._target[pattern]
        return left if pol is Polarization.LEFT else right

    def _hit0(self, w: Sequence[int], i: int) -> Optional[Perm]:
        window = w[i : i + self.c]
        lo = min(window)
        if max(window) - lo != self.c - 1:
            return None
        pat = tuple(v - lo + 1 for v in window)
        return pat if pat in self._target else None

    def _step0(self, w: Perm, i: int) -> Optional[Perm]:
        """Straighten the window at 0-based ``i``; None if not a P-hit or already straightened."""
        pat = self._hit0(w, i)
        if pat is None:
            return None
        goal = self.target(pat, _polarization0(w, i, self.c))
        if goal == pat:
            return None
        shift = min(w[i : i + self.c]) - 1
        return w[:i] + tuple(v + shift for v in goal) + w[i + self.c :]

    def require_hit(self, w: Sequence[int], start: int) -> tuple[Perm, Polarization]:
        i = start - 1
        pat = self._hit0(w, i) if 0 <= i <= len(w) - self.c else None
        if pat is None:
            raise NotAHit(f"window at {start} in {format_perm(w)} is not a P-hit")
        return pat, _polarization0(w, i, self.c)

    def is_straightened(self, w: Sequence[int], start: int) -> bool:
        pat, pol = self.require_hit(w, start)
        return self.target(pat, pol) == pat

    def straighten(self, w: Sequence[int], start: int) -> Perm:
        w = tuple(w)
        self.require_hit(w, start)
        out = self._step0(w, start - 1)
        return w if out is None else out

    def steps(self, w: Perm) -> list[tuple[int, Perm]]:
        """``(start, successor)`` for every non-straightened P-hit, 1-based start."""
        out = []
        for i in range(len(w) - self.c + 1):
            nxt = self._step0(w, i)
            if nxt is not None:
                out.append((i + 1, nxt))
        return out

    def successors(self, w: Perm) -> set[Perm]:
        return {nxt for _, nxt in self.steps(w)}

    def first_step(self, w: Perm) -> Optional[tuple[int, Perm]]:
        for i in range(len(w) - self.c + 1):
            nxt = self._step0(w, i)
            if nxt is not None:
                return i + 1, nxt
        return None

    def is_root(self, w: Perm) -> bool:
        return self.first_step(w) is None

    def trace(self, w: Sequence[int], step_budget: Optional[int] = None) -> list[tuple[int, Perm, Perm]]:
        """Leftmost-first straightening run as ``(start, before, after)`` triples."""
        w = tuple(w)
        budget = default_step_budget(len(w)) if step_budget is None else step_budget
        out = []
        while True:
            step = self.first_step(w)
            if step is None:
                return out
            if len(out) >= budget:
                raise StepBudgetExceeded(out[0][1] if out else w, budget)
            start, nxt = step
            out.append((start, w, nxt))
            w = nxt

    def normal_form(self, w: Sequence[int], step_budget: Optional[int] = None) -> Perm:
        w = tuple(w)
        budget = default_step_budget(len(w)) if step_budget is None else step_budget
        origin = w
        for _ in range(budget + 1):
            step = self.first_step(w)
            if step is None:
                return w
            w = step[1]
        raise StepBudgetExceeded(origin, budget)

    def random_normal_form(self, w: Sequence[int], rng: random.Random, step_budget: Optional[int] = None) -> Perm:
        """Straighten a uniformly chosen non-straightened hit until none remain."""
        w = tuple(w)
        budget = default_step_budget(len(w)) if step_budget is None else step_budget
        origin = w
        for _ in range(budget + 1):
            options = self.steps(w)
            if not options:
                return w
            w = rng.choice(options)[1]
        raise StepBudgetExceeded(origin, budget)


def default_step_budget(n: int) -> int:
    return 2 * n * factorial(n)


@lru_cache(maxsize=256)
def straightener(P: ReplacementPartition, C: StraighteningSet) -> Straightener:
    return Straightener(P, C)


def is_straightened(w: Sequence[int], start: int, P: ReplacementPartition, C: StraighteningSet) -> bool:
    return straightener(P, C).is_straightened(w, start)


def straighten(w: Sequence[int], start: int, P: ReplacementPartition, C: StraighteningSet) -> Perm:
    return straightener(P, C).straighten(w, start)


def straightening_successors(w: Sequence[int], P: ReplacementPartition, C: StraighteningSet) -> set[Perm]:
    return straightener(P, C).successors(tuple(w))


def normal_form(
    w: Sequence[int],
    P: ReplacementPartition,
    C: StraighteningSet,
    step_budget: Optional[int] = None,
) -> Perm:
    return straightener(P, C).normal_form(w, step_budget)
