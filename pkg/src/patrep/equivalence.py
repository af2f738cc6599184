"""P-equivalence classes on S_n and empirical confluence checks."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Optional, Sequence

from .partition import ReplacementPartition, StraighteningSet, default_straightening_set
from .perm import Perm, all_perms, format_perm
from .rewrite import straightener

DEFAULT_MAX_N = 11


class EnumerationTooLarge(ValueError):
    pass


class ConfluenceError(AssertionError):
    pass


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1
        return True

    def groups(self) -> list[list[int]]:
        """Members of every set, each sorted, sets ordered by smallest member."""
        by_root: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            by_root.setdefault(self.find(x), []).append(x)
        return sorted(by_root.values(), key=lambda g: g[0])


class Rearranger:
    """Single P-rearrangement moves, with the partition compiled to a lookup."""

    def __init__(self, P: ReplacementPartition):
        self.P = P
        self.c = P.c
        self._alternatives = {
            pat: tuple(q for q in P.parts[i] if q != pat) for pat, i in P.index.items()
        }

    def neighbors(self, w: Perm) -> list[Perm]:
        c = self.c
        out = []
        for i in range(len(w) - c + 1):
            window = w[i : i + c]
            lo = min(window)
            if max(window) - lo != c - 1:
                continue
            alts = self._alternatives.get(tuple(v - lo + 1 for v in window))
            if not alts:
                continue
            head, tail = w[:i], w[i + c :]
            shift = lo - 1
            for alt in alts:
                out.append(head + tuple(v + shift for v in alt) + tail)
        return out


def rearrangement_neighbors(w: Sequence[int], P: ReplacementPartition) -> set[Perm]:
    """Every permutation one P-rearrangement away from ``w``."""
    return set(Rearranger(P).neighbors(tuple(w)))


@dataclass
class EquivalenceClass:
    members: tuple[Perm, ...]
    root: Optional[Perm] = None

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.members


@dataclass
class ClassDecomposition:
    n: int
    partition: ReplacementPartition
    classes: list[EquivalenceClass]
    straightening: Optional[StraighteningSet] = None

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [cls.size for cls in self.classes]

    def class_of(self, w: Sequence[int]) -> EquivalenceClass:
        w = tuple(w)
        for cls in self.classes:
            if w in cls.members:
                return cls
        raise KeyError(format_perm(w))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partition": self.partition.to_json(),
            "straightening": None if self.straightening is None else self.straightening.spec(),
            "count": len(self.classes),
            "classes": [
                {
                    "size": cls.size,
                    "root": None if cls.root is None else format_perm(cls.root),
                    "members": [format_perm(m) for m in cls.members],
                }
                for cls in self.classes
            ],
        }


def _guard(n: int, max_n: int) -> None:
    if n > max_n:
        raise EnumerationTooLarge(f"n={n} exceeds the enumeration guard ({max_n}); {factorial(n)} permutations")


def _edge_shard(args) -> list[tuple[int, int]]:
    n, P, lo, hi = args
    perms = list(all_perms(n))
    index = {p: i for i, p in enumerate(perms)}
    rearr = Rearranger(P)
    edges = []
    for i in range(lo, hi):
        for q in rearr.neighbors(perms[i]):
            j = index[q]
            if j > i:
                edges.append((i, j))
    return edges


def _class_union_find(n: int, P: ReplacementPartition, perms: list[Perm], index: dict, workers: int) -> UnionFind:
    uf = UnionFind(len(perms))
    if workers > 1:
        step = -(-len(perms) // workers)
        shards = [(n, P, lo, min(lo + step, len(perms))) for lo in range(0, len(perms), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for edges in pool.map(_edge_shard, shards):
                for i, j in edges:
                    uf.union(i, j)
        return uf
    rearr = Rearranger(P)
    for i, w in enumerate(perms):
        for q in rearr.neighbors(w):
            uf.union(i, index[q])
    return uf


def enumerate_classes(
    n: int,
    P: ReplacementPartition,
    with_roots: bool = False,
    C: Optional[StraighteningSet] = None,
    max_n: int = DEFAULT_MAX_N,
    workers: int = 1,
) -> ClassDecomposition:
    """Connected components of the P-rearrangement graph on S_n.

    With ``with_roots`` every member is straightened to normal form and the
    class must agree on a single root, else ``ConfluenceError``.
    """
    _guard(n, max_n)
    perms = list(all_perms(n))
    index = {p: i for i, p in enumerate(perms)}
    uf = _class_union_find(n, P, perms, index, workers)
    classes = [EquivalenceClass(tuple(perms[i] for i in group)) for group in uf.groups()]
    if with_roots:
        C = C if C is not None else default_straightening_set(P)
        s = straightener(P, C)
        for cls in classes:
            roots = {s.normal_form(w) for w in cls.members}
            if len(roots) != 1:
                raise ConfluenceError(
                    f"class of {format_perm(cls.members[0])} has roots "
                    + ", ".join(format_perm(r) for r in sorted(roots))
                )
            cls.root = roots.pop()
    return ClassDecomposition(n, P, classes, C if with_roots else None)


@dataclass
class StraighteningGraph:
    """The straightening operator on S_n as adjacency lists over lexicographic ranks."""

    n: int
    perms: list[Perm]
    index: dict
    succ: list[list[int]]

    @classmethod
    def build(cls, n: int, P: ReplacementPartition, C: StraighteningSet) -> "StraighteningGraph":
        s = straightener(P, C)
        perms = list(all_perms(n))
        index = {p: i for i, p in enumerate(perms)}
        succ = [sorted({index[q] for _, q in s.steps(w)}) for w in perms]
        return cls(n, perms, index, succ)

    def sinks(self) -> list[int]:
        return [i for i, out in enumerate(self.succ) if not out]

    def topological_order(self) -> Optional[list[int]]:
        """Kahn order, or None when the graph has a cycle."""
        indeg = [0] * len(self.succ)
        for out in self.succ:
            for j in out:
                indeg[j] += 1
        queue = deque(i for i, d in enumerate(indeg) if d == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in self.succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        return order if len(order) == len(self.succ) else None

    def reachable_sinks(self) -> list[frozenset]:
        """Sinks reachable from each node (reflexively); works on cyclic graphs too."""
        order = self.topological_order()
        if order is not None:
            out: list[frozenset] = [frozenset()] * len(self.succ)
            for i in reversed(order):
                if not self.succ[i]:
                    out[i] = frozenset((i,))
                else:
                    acc: set[int] = set()
                    for j in self.succ[i]:
                        acc |= out[j]
                    out[i] = frozenset(acc)
            return out
        return [frozenset(j for j in self.descendants(i) if not self.succ[j]) for i in range(len(self.succ))]

    def descendants(self, i: int) -> set[int]:
        seen = {i}
        stack = [i]
        while stack:
            for j in self.succ[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen


@dataclass
class ConfluenceReport:
    n: int
    terminated: bool
    cycles_found: bool
    classes_with_unique_root: int
    total_classes: int
    roots: int
    component_level_confluent: bool
    counterexamples: list[Perm] = field(default_factory=list)

    @property
    def confluent(self) -> bool:
        return self.terminated and self.classes_with_unique_root == self.total_classes

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "confluent": self.confluent,
            "terminated": self.terminated,
            "cycles_found": self.cycles_found,
            "classes_with_unique_root": self.classes_with_unique_root,
            "total_classes": self.total_classes,
            "roots": self.roots,
            "component_level_confluent": self.component_level_confluent,
            "counterexamples": [format_perm(w) for w in self.counterexamples],
        }


def check_confluence(
    n: int,
    P: ReplacementPartition,
    C: Optional[StraighteningSet] = None,
    max_n: int = DEFAULT_MAX_N,
    max_counterexamples: int = 20,
) -> ConfluenceReport:
    """Root property per P-class plus the component-level definition on the operator's own graph."""
    _guard(n, max_n)
    C = C if C is not None else default_straightening_set(P)
    graph = StraighteningGraph.build(n, P, C)
    cyclic = graph.topological_order() is None
    classes_uf = _class_union_find(n, P, graph.perms, graph.index, 1)
    for i, out in enumerate(graph.succ):
        for j in out:
            if classes_uf.find(i) != classes_uf.find(j):
                raise AssertionError("a straightening step left its equivalence class")
    reach = graph.reachable_sinks()

    good = 0
    groups = classes_uf.groups()
    bad: list[Perm] = []
    for group in groups:
        sinks = [i for i in group if not graph.succ[i]]
        if len(sinks) == 1 and all(reach[i] == frozenset(sinks) for i in group):
            good += 1
        elif len(bad) < max_counterexamples:
            # offending sinks first, else members that cannot reach the sink
            witnesses = sinks[1:] if len(sinks) > 1 else [i for i in group if len(reach[i]) != 1]
            bad.extend(graph.perms[i] for i in (witnesses or group[:1]))

    comp = UnionFind(len(graph.perms))
    for i, out in enumerate(graph.succ):
        for j in out:
            comp.union(i, j)
    component_ok = not cyclic and all(
        sum(1 for i in g if not graph.succ[i]) == 1 for g in comp.groups()
    )
    return ConfluenceReport(
        n=n,
        terminated=not cyclic,
        cycles_found=cyclic,
        classes_with_unique_root=good,
        total_classes=len(groups),
        roots=len(graph.sinks()),
        component_level_confluent=component_ok,
        counterexamples=bad[:max_counterexamples],
    )


def find_diamond_violation(
    n: int, P: ReplacementPartition, C: Optional[StraighteningSet] = None, max_n: int = DEFAULT_MAX_N
) -> Optional[tuple[Perm, Perm, Perm]]:
    """A ``(w, b, c)`` with w -> b, w -> c and no common descendant, if any."""
    _guard(n, max_n)
    C = C if C is not None else default_straightening_set(P)
    graph = StraighteningGraph.build(n, P, C)
    if graph.topological_order() is not None:
        # terminating: b and c are joinable exactly when they share a reachable sink
        reach = graph.reachable_sinks()
        joinable = lambda b, c: bool(reach[b] & reach[c])  # noqa: E731
    else:
        joinable = lambda b, c: bool(graph.descendants(b) & graph.descendants(c))  # noqa: E731
    for i, out in enumerate(graph.succ):
        for x in range(len(out)):
            for y in range(x + 1, len(out)):
                if not joinable(out[x], out[y]):
                    return graph.perms[i], graph.perms[out[x]], graph.perms[out[y]]
    return None


def verify_local_diamond(n: int, P: ReplacementPartition, C: Optional[StraighteningSet] = None, max_n: int = DEFAULT_MAX_N) -> bool:
    return find_diamond_violation(n, P, C, max_n) is None


def _q(w: Perm) -> str:
    return '"{}"'.format(format_perm(w))


def class_dot(
    members: Iterable[Sequence[int]],
    P: ReplacementPartition,
    C: Optional[StraighteningSet] = None,
    name: str = "classes",
) -> str:
    """DOT source for a set of permutations.

    Single rearrangement moves are drawn as undirected grey edges; when ``C``
    is given, straightening steps are drawn as directed edges and roots are
    boxed.
    """
    members = sorted(tuple(m) for m in members)
    inside = set(members)
    rearr = Rearranger(P)
    s = straightener(P, C) if C is not None else None
    lines = [f"digraph {name} {{"]
    for w in members:
        shape = "box" if s is not None and s.is_root(w) else "ellipse"
        lines.append(f"  {_q(w)} [shape={shape}];")
    for w in members:
        for q in sorted(set(rearr.neighbors(w))):
            if q in inside and w < q:
                lines.append(f"  {_q(w)} -> {_q(q)} [dir=none, color=grey];")
    if s is not None:
        for w in members:
            for q in sorted(s.successors(w)):
                if q in inside:
                    lines.append(f"  {_q(w)} -> {_q(q)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
