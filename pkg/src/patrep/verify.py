"""Exhaustive and randomized checks of the structural lemmas and theorems.

Every check returns a ``Check`` carrying how many cases it examined and the
first few violations it met.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .counting import compare_counts, pair_families
from .equivalence import (
    Rearranger,
    StraighteningGraph,
    check_confluence,
    enumerate_classes,
)
from .partition import (
    ReplacementPartition,
    StraighteningSet,
    all_partitions_of,
    default_straightening_set,
)
from .perm import Leaning, Perm, all_perms, format_perm, leaning_of, pattern_of
from .rewrite import hits, straightener
from .sc_family import id_class, sc_class_structure, sc_system, t_sequence

MAX_REPORTED = 10


@dataclass
class Check:
    name: str
    cases: int = 0
    violations: list[str] = field(default_factory=list)
    violation_count: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def fail(self, msg: str) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_REPORTED:
            self.violations.append(msg)

    def merge(self, other: "Check") -> "Check":
        self.cases += other.cases
        self.violation_count += other.violation_count
        self.violations.extend(other.violations[: MAX_REPORTED - len(self.violations)])
        return self

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.cases} cases, {self.violation_count} violations"


# -- permutation sources ----------------------------------------------------


def random_perm(n: int, rng: random.Random) -> Perm:
    values = list(range(1, n + 1))
    rng.shuffle(values)
    return tuple(values)


def random_perm_with_hit(n: int, c: int, rng: random.Random) -> Perm:
    """A uniform-ish permutation with a size-``c`` hit planted at a random window."""
    start = rng.randrange(n - c + 1)
    lo = rng.randrange(1, n - c + 2)
    inside = list(range(lo, lo + c))
    outside = [v for v in range(1, n + 1) if not lo <= v < lo + c]
    rng.shuffle(inside)
    rng.shuffle(outside)
    return tuple(outside[:start] + inside + outside[start:])


def random_partition(c: int, rng: random.Random, coverage: float = 1.0) -> ReplacementPartition:
    pats = [p for p in all_perms(c) if rng.random() < coverage]
    if not pats:
        pats = [tuple(range(1, c + 1))]
    labels = [rng.randrange(len(pats)) for _ in pats]
    parts: dict[int, list[Perm]] = {}
    for p, lab in zip(pats, labels):
        parts.setdefault(lab, []).append(p)
    return ReplacementPartition(c, list(parts.values()))


# -- per-permutation predicates --------------------------------------------


def overlapping_hits_violation(w: Perm, c: int) -> Optional[str]:
    hs = hits(w, c)
    for a in range(len(hs)):
        for b in range(a + 1, len(hs)):
            h, g = hs[a], hs[b]
            if g.start >= h.start + c:
                break
            if not (h.forward and g.forward and h.leaning is g.leaning):
                return f"{format_perm(w)}: hits at {h.start} and {g.start}"
    return None


def local_order_violation(w: Perm, P: ReplacementPartition) -> Optional[str]:
    c = P.c
    n = len(w)
    for h in hits(w, c, P):
        lo = h.start - 1
        for alt in P.parts[P.index[h.pattern]]:
            shift = min(w[lo : lo + c]) - 1
            v = w[:lo] + tuple(x + shift for x in alt) + w[lo + c :]
            for i in range(n):
                if lo <= i < lo + c:
                    continue
                for j in range(n):
                    if (w[i] < w[j]) != (v[i] < v[j]):
                        return f"{format_perm(w)} -> {format_perm(v)} at ({i + 1},{j + 1})"
    return None


def backward_unstraightened(w: Perm, P: ReplacementPartition, C: StraighteningSet) -> int:
    s = straightener(P, C)
    unstraight = {start for start, _ in s.steps(w)}
    return sum(1 for h in hits(w, P.c, P) if not h.forward and h.start in unstraight)


def ignore_backward_violation(w: Perm, P: ReplacementPartition, C: StraighteningSet) -> Optional[str]:
    s = straightener(P, C)
    before = backward_unstraightened(w, P, C)
    for h in hits(w, P.c, P):
        if s.is_straightened(w, h.start):
            continue
        after = backward_unstraightened(s.straighten(w, h.start), P, C)
        expected = before if h.forward else before - 1
        if after != expected:
            kind = "forward" if h.forward else "backward"
            return f"{format_perm(w)}: {kind} hit at {h.start}, count {before} -> {after}"
    return None


def hit_maintaining_violation(w: Perm, c: int) -> Optional[str]:
    P, C = sc_system(c)
    s = straightener(P, C)
    windows = [h.start for h in hits(w, c)]
    for start, v in s.steps(w):
        for other in windows:
            if other != start and pattern_of(v[other - 1 : other - 1 + c]) is None:
                return f"{format_perm(w)}: straightening {start} breaks hit at {other}"
    return None


def stay_in_r_host_violation(w: Perm, c: int) -> Optional[str]:
    """Straightening an R_c-hit towards 12...c keeps every other R_c-hit window in R_c."""
    alpha = tuple(range(1, c + 1))
    rights = [h for h in hits(w, c) if h.leaning is Leaning.RIGHT]
    for h in rights:
        if h.pattern == alpha:
            continue
        lo = h.start - 1
        v = w[:lo] + tuple(sorted(w[lo : lo + c])) + w[lo + c :]
        for g in rights:
            if g.start == h.start:
                continue
            pat = pattern_of(v[g.start - 1 : g.start - 1 + c])
            if pat is None or leaning_of(pat) is not Leaning.RIGHT:
                return f"{format_perm(w)}: sorting hit at {h.start} spoils hit at {g.start}"
    return None


# -- checks ------------------------------------------------------------------


def check_overlapping_hits(c: int, perms: Iterable[Perm]) -> Check:
    chk = Check(f"overlapping hits (c={c})")
    for w in perms:
        chk.cases += 1
        msg = overlapping_hits_violation(w, c)
        if msg:
            chk.fail(msg)
    return chk


def check_local_order_change(P: ReplacementPartition, perms: Iterable[Perm]) -> Check:
    chk = Check(f"local order change ({P})")
    for w in perms:
        chk.cases += 1
        msg = local_order_violation(w, P)
        if msg:
            chk.fail(msg)
    return chk


def check_letter_order(P: ReplacementPartition, n: int) -> Check:
    """Letters at distance >= c keep their relative order across a whole class."""
    chk = Check(f"letter order ({P}, n={n})")
    c = P.c
    pairs = [(i, j) for i in range(n) for j in range(n) if abs(i - j) >= c]
    for cls in enumerate_classes(n, P).classes:
        ref = cls.members[0]
        signature = [ref[i] < ref[j] for i, j in pairs]
        for u in cls.members[1:]:
            chk.cases += 1
            if [u[i] < u[j] for i, j in pairs] != signature:
                chk.fail(f"{format_perm(ref)} ~ {format_perm(u)}")
    return chk


def letter_order_random_walk(P: ReplacementPartition, n: int, trials: int, rng: random.Random, max_steps: int = 20) -> Check:
    chk = Check(f"letter order, random walks ({P}, n={n})")
    c = P.c
    rearr = Rearranger(P)
    pairs = [(i, j) for i in range(n) for j in range(n) if abs(i - j) >= c]
    for _ in range(trials):
        w = random_perm_with_hit(n, c, rng)
        u = w
        for _ in range(rng.randint(1, max_steps)):
            nbrs = rearr.neighbors(u)
            if not nbrs:
                break
            u = rng.choice(nbrs)
        chk.cases += 1
        if any((w[i] < w[j]) != (u[i] < u[j]) for i, j in pairs):
            chk.fail(f"{format_perm(w)} ~ {format_perm(u)}")
    return chk


def check_ignore_backward(P: ReplacementPartition, C: StraighteningSet, perms: Iterable[Perm]) -> Check:
    chk = Check(f"ignore backward hits ({P})")
    for w in perms:
        chk.cases += 1
        msg = ignore_backward_violation(w, P, C)
        if msg:
            chk.fail(msg)
    return chk


def check_stay_in_r(c: int) -> Check:
    """Sorting any contiguous piece of a right-leaning pattern keeps it right leaning."""
    chk = Check(f"stay in R_c (c={c})")
    for u in all_perms(c):
        if leaning_of(u) is not Leaning.RIGHT:
            continue
        for i in range(c):
            for j in range(i + 2, c + 1):
                chk.cases += 1
                v = u[:i] + tuple(sorted(u[i:j])) + u[j:]
                if leaning_of(v) is not Leaning.RIGHT:
                    chk.fail(f"{format_perm(u)} -> {format_perm(v)}")
    return chk


def check_stay_in_r_host(c: int, perms: Iterable[Perm]) -> Check:
    chk = Check(f"stay in R_c, in host permutations (c={c})")
    for w in perms:
        chk.cases += 1
        msg = stay_in_r_host_violation(w, c)
        if msg:
            chk.fail(msg)
    return chk


def check_hit_maintaining(c: int, perms: Iterable[Perm]) -> Check:
    chk = Check(f"hit maintaining (c={c})")
    for w in perms:
        chk.cases += 1
        msg = hit_maintaining_violation(w, c)
        if msg:
            chk.fail(msg)
    return chk


def _exhaustive(c: int, max_n: int) -> Iterable[Perm]:
    for n in range(c, max_n + 1):
        yield from all_perms(n)


def s3_partitions() -> list[ReplacementPartition]:
    return list(all_partitions_of(list(all_perms(3))))


def lemma_suite_exhaustive(max_n: int = 6, c: int = 3) -> list[Check]:
    """All lemmas for every partition of S_c (default straightening sets), c <= n <= max_n."""
    parts = list(all_partitions_of(list(all_perms(c))))
    out = [
        check_overlapping_hits(c, _exhaustive(c, max_n)),
        check_stay_in_r(c),
        check_stay_in_r_host(c, _exhaustive(c, max_n)),
        check_hit_maintaining(c, _exhaustive(c, max_n)),
    ]
    letter = Check(f"letter order (all partitions of S_{c})")
    local = Check(f"local order change (all partitions of S_{c})")
    backward = Check(f"ignore backward hits (all partitions of S_{c})")
    for P in parts:
        C = default_straightening_set(P)
        local.merge(check_local_order_change(P, _exhaustive(c, max_n)))
        backward.merge(check_ignore_backward(P, C, _exhaustive(c, max_n)))
        for n in range(c, max_n + 1):
            letter.merge(check_letter_order(P, n))
    return out + [letter, local, backward]


def confluent_samples(c: int, rng: random.Random, count: int = 4, certify_n: Optional[int] = None) -> list[tuple[ReplacementPartition, StraighteningSet]]:
    """Partitions of S_c whose default straightening is confluent on S_{certify_n}.

    Always includes S_c as one part with {12...c, c...21}; the rest are
    infinite-family pairings.
    """
    certify_n = c + 2 if certify_n is None else certify_n
    out = [sc_system(c)]
    families = [P for k in (1, 2, 3) for P in pair_families(c, k)]
    rng.shuffle(families)
    for P in families:
        if len(out) >= count:
            break
        C = default_straightening_set(P)
        if check_confluence(certify_n, P, C).confluent:
            out.append((P, C))
    return out


def lemma_suite_random(c: int = 4, n: int = 8, trials: int = 100_000, seed: int = 0) -> list[Check]:
    """The same lemmas on ``trials`` random permutations of size n with planted hits."""
    rng = random.Random(seed)
    systems = confluent_samples(c, rng)

    def sample(k: int) -> list[Perm]:
        return [random_perm_with_hit(n, c, rng) for _ in range(k)]

    out = [
        check_overlapping_hits(c, sample(trials)),
        check_stay_in_r(c),
        check_stay_in_r_host(c, sample(trials)),
        check_hit_maintaining(c, sample(trials)),
    ]
    per = max(1, trials // 100)
    local = Check(f"local order change (random partitions of S_{c})")
    for _ in range(100):
        local.merge(check_local_order_change(random_partition(c, rng), sample(per)))
    letter = Check(f"letter order (random partitions of S_{c})")
    for _ in range(100):
        letter.merge(letter_order_random_walk(random_partition(c, rng), n, per, rng))
    backward = Check(f"ignore backward hits (confluent samples of S_{c})")
    per = max(1, trials // len(systems))
    for P, C in systems:
        backward.merge(check_ignore_backward(P, C, sample(per)))
    return out + [local, letter, backward]


def s3_suite(max_n: int = 6) -> list[Check]:
    conf = Check("every partition of S_3 is confluent under its default straightening set")
    counts = Check("class counts match the formula when the overlap hypothesis holds")
    r3 = {(1, 2, 3), (1, 3, 2), (2, 1, 3)}
    l3 = {(3, 2, 1), (3, 1, 2), (2, 3, 1)}
    for P in s3_partitions():
        for n in range(3, max_n + 1):
            conf.cases += 1
            report = check_confluence(n, P)
            if not report.confluent:
                conf.fail(f"{P} at n={n}: {[format_perm(w) for w in report.counterexamples[:3]]}")
        if any(r3 <= set(part) or l3 <= set(part) for part in P.parts):
            continue
        for row in compare_counts(range(3, max_n + 1), P):
            counts.cases += 1
            if row.formula is None or not row.agree:
                counts.fail(f"{P}: {row.as_dict()}")
    return [conf, counts]


def sc_roots_check(c: int, n: int, random_orders: int = 100, seed: int = 0) -> Check:
    """Unique root per S_c-class, reached by leftmost and by random straightening orders."""
    chk = Check(f"S_c roots (c={c}, n={n})")
    if c > n:
        return chk
    rng = random.Random(seed)
    P, C = sc_system(c)
    s = straightener(P, C)
    graph = StraighteningGraph.build(n, P, C)
    if graph.topological_order() is None:
        chk.fail("straightening graph has a cycle")
        return chk
    for cls in enumerate_classes(n, P).classes:
        idx = [graph.index[w] for w in cls.members]
        sinks = [i for i in idx if not graph.succ[i]]
        chk.cases += 1
        if len(sinks) != 1:
            chk.fail(f"class of {format_perm(cls.members[0])} has {len(sinks)} roots")
            continue
        root = graph.perms[sinks[0]]
        for w in cls.members:
            if s.normal_form(w) != root:
                chk.fail(f"leftmost run from {format_perm(w)} misses root {format_perm(root)}")
                break
        for _ in range(random_orders):
            i = rng.choice(idx)
            while graph.succ[i]:
                i = rng.choice(graph.succ[i])
            if i != sinks[0]:
                chk.fail(f"random run in class of {format_perm(root)} ends at {format_perm(graph.perms[i])}")
                break
    return chk


def sc_suite(max_n: int = 8, cs: Sequence[int] = (2, 3, 4)) -> list[Check]:
    roots = Check("S_c classes have unique roots under leftmost and random orders")
    tooth = Check("class of the identity equals the c-toothed permutations")
    structure = Check("class sizes factor along the root's runs (c=3)")
    for c in cs:
        for n in range(c, max_n + 1):
            roots.merge(sc_roots_check(c, n))
            tooth.cases += 1
            if id_class(n, c) != id_class(n, c, "toothed"):
                tooth.fail(f"c={c}, n={n}")
    for n in range(3, max_n + 1):
        rep = sc_class_structure(n, 3)
        structure.cases += rep.classes
        for v in rep.violations:
            structure.fail(v)
    seq = Check("T_{3,n}: enumeration equals the recurrence")
    for row in t_sequence(3, max(max_n, 3), "both").rows():
        seq.cases += 1
        if not row["agree"]:
            seq.fail(str(row))
    return [roots, tooth, structure, seq]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "lemmas": lambda max_n=6, trials=100_000, seed=0: lemma_suite_exhaustive(max_n) + lemma_suite_random(trials=trials, seed=seed),
    "s3": lambda max_n=6, **_: s3_suite(max_n),
    "sc": lambda max_n=8, **_: sc_suite(max_n),
}
