"""Replacement partitions and straightening sets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .perm import Leaning, Perm, all_perms, format_perm, leaning_of, parse_perm


class PartitionError(ValueError):
    pass


def _canonical_parts(parts: Iterable[Iterable[Perm]]) -> tuple[tuple[Perm, ...], ...]:
    normalized = [tuple(sorted(part)) for part in parts]
    return tuple(sorted(normalized, key=lambda part: part[0]))


@dataclass(frozen=True)
class ReplacementPartition:
    """A partition of a subset of S_c.

    ``parts`` is stored in canonical order: patterns sorted inside each part,
    parts sorted by their smallest pattern.
    """

    c: int
    parts: tuple[tuple[Perm, ...], ...]
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, c: int, parts: Iterable[Iterable[Sequence[int]]]):
        parts = [[tuple(p) for p in part] for part in parts]
        seen: set[Perm] = set()
        for part in parts:
            if not part:
                raise PartitionError("empty part")
            for pat in part:
                if len(pat) != c or sorted(pat) != list(range(1, c + 1)):
                    raise PartitionError(f"{format_perm(pat)} is not a pattern of size {c}")
                if pat in seen:
                    raise PartitionError(f"pattern {format_perm(pat)} appears twice")
                seen.add(pat)
        canon = _canonical_parts(parts)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "parts", canon)
        object.__setattr__(
            self, "index", {pat: i for i, part in enumerate(canon) for pat in part}
        )

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def support(self) -> frozenset:
        return frozenset(self.index)

    def part_of(self, pattern: Perm) -> Optional[int]:
        return self.index.get(pattern)

    def spec(self) -> str:
        return "|".join(",".join(format_perm(p) for p in part) for part in self.parts)

    def to_json(self) -> dict:
        return {"c": self.c, "parts": [[format_perm(p) for p in part] for part in self.parts]}

    @classmethod
    def from_json(cls, data: dict | str) -> "ReplacementPartition":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["c"], [[parse_perm(p) for p in part] for part in data["parts"]])

    def padded(self) -> "ReplacementPartition":
        """Same equivalence, with every pattern of S_c outside the support as a singleton."""
        extra = [[p] for p in all_perms(self.c) if p not in self.index]
        return ReplacementPartition(self.c, list(self.parts) + extra)

    def reversed(self) -> "ReplacementPartition":
        return ReplacementPartition(self.c, [[p[::-1] for p in part] for part in self.parts])

    def __str__(self) -> str:
        return "".join("{" + ",".join(format_perm(p) for p in part) + "}" for part in self.parts)


def parse_partition(spec: str, c: Optional[int] = None) -> ReplacementPartition:
    """Parse ``"123,321|132|213"``: parts split on ``|``, patterns on ``,``."""
    spec = spec.strip()
    if not spec:
        raise PartitionError("empty partition spec")
    parts = []
    for chunk in spec.split("|"):
        toks = [t.strip() for t in chunk.split(",")]
        if not all(toks):
            raise PartitionError(f"malformed partition spec: {spec!r}")
        if not all(t.isdigit() for t in toks):
            raise PartitionError(f"malformed partition spec: {spec!r}")
        parts.append([tuple(int(ch) for ch in t) for t in toks])
    if c is None:
        c = len(parts[0][0])
    return ReplacementPartition(c, parts)


def one_part(c: int) -> ReplacementPartition:
    """S_c as a single part."""
    return ReplacementPartition(c, [list(all_perms(c))])


@dataclass(frozen=True)
class StraighteningSet:
    members: frozenset
    parent: ReplacementPartition

    def __post_init__(self):
        if not validate_straightening_set(self.parent, self.members):
            raise PartitionError(
                f"{{{','.join(format_perm(p) for p in sorted(self.members))}}} "
                f"is not a straightening set of {self.parent}"
            )

    def __contains__(self, pattern) -> bool:
        return pattern in self.members

    def spec(self) -> str:
        return ",".join(format_perm(p) for p in sorted(self.members))


def validate_straightening_set(P: ReplacementPartition, C: Iterable[Sequence[int]]) -> bool:
    """Check the three leaning conditions for ``C`` against every part of ``P``.

    An omni-leaning member is accepted only for a part made solely of omni
    patterns, which keeps the straightened form of every hit unique.
    """
    C = {tuple(p) for p in C}
    if not C <= P.support:
        return False
    for part in P.parts:
        chosen = [p for p in part if p in C]
        by_lean = {lean: [p for p in part if leaning_of(p) is lean] for lean in Leaning}
        chosen_by_lean = {lean: [p for p in chosen if leaning_of(p) is lean] for lean in Leaning}
        if by_lean[Leaning.LEFT] or by_lean[Leaning.RIGHT]:
            for lean in (Leaning.LEFT, Leaning.RIGHT):
                if len(chosen_by_lean[lean]) != (1 if by_lean[lean] else 0):
                    return False
            if chosen_by_lean[Leaning.OMNI]:
                return False
        elif len(chosen) != 1:
            return False
    return True


def default_straightening_set(P: ReplacementPartition) -> StraighteningSet:
    """Lexicographically smallest right-leaning member per part, the mirror
    choice (smallest reversal) among left-leaning members, and the smallest
    member of an omni-only part."""
    members = set()
    for part in P.parts:
        rights = [p for p in part if leaning_of(p) is Leaning.RIGHT]
        lefts = [p for p in part if leaning_of(p) is Leaning.LEFT]
        if rights:
            members.add(min(rights))
        if lefts:
            members.add(min(lefts, key=lambda p: p[::-1]))
        if not rights and not lefts:
            members.add(min(part))
    return StraighteningSet(frozenset(members), P)


def parse_straightening(spec: str, P: ReplacementPartition) -> StraighteningSet:
    if spec.strip() == "auto":
        return default_straightening_set(P)
    members = frozenset(tuple(int(ch) for ch in tok.strip()) for tok in spec.split(","))
    return StraighteningSet(members, P)


def disjoint_union(
    J: ReplacementPartition,
    K: ReplacementPartition,
    pairing: Sequence[tuple[Optional[Sequence[Perm]], Optional[Sequence[Perm]]]],
) -> ReplacementPartition:
    """Combine parts of ``J`` and ``K`` pairwise; ``None`` marks an empty side."""
    if J.c != K.c:
        raise PartitionError("pattern sizes differ")
    if J.support & K.support:
        raise PartitionError("supports overlap")
    used_j: set[int] = set()
    used_k: set[int] = set()
    parts = []
    for a, b in pairing:
        if a is None and b is None:
            raise PartitionError("pairing entry with two empty sides")
        merged: list[Perm] = []
        for side, source, used in ((a, J, used_j), (b, K, used_k)):
            if side is None:
                continue
            side = [tuple(p) for p in side]
            idx = source.part_of(side[0])
            if idx is None or set(side) != set(source.parts[idx]):
                raise PartitionError(f"{side} is not a part of {source}")
            if idx in used:
                raise PartitionError(f"part {source.parts[idx]} used twice")
            used.add(idx)
            merged.extend(side)
        parts.append(merged)
    if len(used_j) != len(J) or len(used_k) != len(K):
        raise PartitionError("pairing does not cover every part")
    return ReplacementPartition(J.c, parts)


def insert_omni(P: ReplacementPartition, o: Sequence[int], target: Optional[int] = None) -> ReplacementPartition:
    """Add omni-leaning ``o`` to part ``target`` (0-based), or as a new part when ``target`` is None."""
    o = tuple(o)
    if len(o) != P.c or leaning_of(o) is not Leaning.OMNI:
        raise PartitionError(f"{format_perm(o)} is not omni leaning")
    if o in P.index:
        raise PartitionError(f"{format_perm(o)} already in the partition")
    parts = [list(part) for part in P.parts]
    if target is None:
        parts.append([o])
    else:
        parts[target].append(o)
    return ReplacementPartition(P.c, parts)


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Every set partition of ``items`` (Bell-number many)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def all_partitions_of(patterns: Sequence[Perm]) -> Iterator[ReplacementPartition]:
    c = len(patterns[0])
    for parts in set_partitions(patterns):
        yield ReplacementPartition(c, parts)
