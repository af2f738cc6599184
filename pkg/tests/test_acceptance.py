"""Acceptance criteria 1-9. Every comparison is exact (integer or set equality, tolerance 0)."""

import itertools
import random

from patrep.counting import brute_count, easy_family_count, formula_count, pair_families
from patrep.equivalence import check_confluence, rearrangement_neighbors
from patrep.partition import StraighteningSet, all_partitions_of, default_straightening_set, parse_partition
from patrep.perm import Leaning, all_perms, leaning_of, parse_perm, tail_size
from patrep.rewrite import Polarization, normal_form, polarization, straighten
from patrep.sc_family import id_class, irreducible_blocks, sc_class_structure, t_sequence, uncorrected_series_t3
from patrep.verify import lemma_suite_exhaustive, lemma_suite_random, s3_partitions, sc_roots_check

S3 = list(all_perms(3))
R3 = {(1, 2, 3), (1, 3, 2), (2, 1, 3)}
L3 = {(3, 2, 1), (3, 1, 2), (2, 3, 1)}
TOLERANCE = 0


def test_criterion_1_s3_confluence(record_criterion):
    failures = []
    full = s3_partitions()
    assert len(full) == 203
    # partitions of proper subsets: all of them, which is denser than a spot check
    partial = [P for k in range(1, 6) for sub in itertools.combinations(S3, k) for P in all_partitions_of(list(sub))]
    assert len(partial) == 673  # sum over k=1..5 of C(6,k) Bell(k)
    cases = 0
    for P in full + partial:
        for n in range(3, 7):
            cases += 1
            if not check_confluence(n, P).confluent:
                failures.append((str(P), n))
    record_criterion(1, not failures, f"{cases} (partition, n) cases, {len(failures)} non-confluent")
    assert not failures, failures[:5]


def test_criterion_2_counting_formula(record_criterion):
    eligible = [
        P for P in s3_partitions() if not any(R3 <= set(part) or L3 <= set(part) for part in P.parts)
    ]
    mismatches = []
    for P in eligible:
        for n in range(3, 8):
            got, want = formula_count(n, 3, 6 - len(P)), brute_count(n, P)
            if abs(got - want) > TOLERANCE:
                mismatches.append((str(P), n, got, want))
    P = parse_partition("123,321|132|213|231|312")
    anchors = [formula_count(3, 3, 6 - len(P)), formula_count(4, 3, 6 - len(P))]
    ok = not mismatches and anchors == [5, 20] and [brute_count(n, P) for n in (3, 4)] == [5, 20]
    record_criterion(2, ok, f"{len(eligible)} partitions x n=3..7, {len(mismatches)} mismatches, f(3),f(4)={anchors}")
    assert ok, mismatches[:5]


def test_criterion_3_infinite_family(record_criterion):
    families = [(3, k, P) for k in (1, 2) for P in pair_families(3, k)]
    rng = random.Random(3)
    for k in (1, 2, 3):
        pool = list(itertools.islice(pair_families(4, k), 2000))
        families.append((4, k, rng.choice(pool)))
    mismatches = []
    for c, k, P in families:
        for n in range(c, c + 4):
            if easy_family_count(n, c, k) != brute_count(n, P):
                mismatches.append((str(P), n))
    ok = not mismatches and sum(1 for f in families if f[0] == 4) >= 3
    record_criterion(3, ok, f"{len(families)} families, {len(mismatches)} mismatches")
    assert ok, mismatches[:5]


def test_criterion_4_sc_roots(record_criterion):
    checks = [sc_roots_check(c, n, random_orders=100, seed=c * 100 + n) for c in (2, 3, 4) for n in range(c, 9)]
    cases = sum(chk.cases for chk in checks)
    bad = [v for chk in checks for v in chk.violations]
    record_criterion(4, not bad, f"{cases} classes, {len(bad)} violations")
    assert not bad, bad[:5]


def test_criterion_5_toothed(record_criterion):
    bad = [(c, n) for c in (2, 3, 4) for n in range(1, 9) if n >= c and id_class(n, c) != id_class(n, c, "toothed")]
    record_criterion(5, not bad, f"c in 2..4, n <= 8, {len(bad)} unequal sets")
    assert not bad


def test_criterion_6_t3_sequence(record_criterion):
    table = t_sequence(3, 10, "both")
    values = [table.value(n) for n in (3, 4, 5)]
    uncorrected = uncorrected_series_t3(3)[3]
    ok = table.agree() and values == [6, 10, 23] and uncorrected == 2
    record_criterion(6, ok, f"n=3..10 agree={table.agree()}, T(3..5)={values}, uncorrected GF at n=3 gives {uncorrected}")
    assert ok


def test_criterion_7_lemma_suite(record_criterion):
    checks = lemma_suite_exhaustive(6, 3) + lemma_suite_random(c=4, n=8, trials=100_000, seed=0)
    violations = sum(chk.violation_count for chk in checks)
    cases = sum(chk.cases for chk in checks)
    record_criterion(7, violations == 0, f"{len(checks)} checks, {cases} cases, {violations} violations")
    for chk in checks:
        print(chk.line())
    assert violations == 0


def test_criterion_8_structure(record_criterion):
    reports = [sc_class_structure(n, 3) for n in range(3, 9)]
    bad = [v for r in reports for v in r.violations]
    record_criterion(8, not bad, f"{sum(r.classes for r in reports)} classes, {len(bad)} violations")
    assert not bad, bad[:5]


def test_criterion_9_worked_examples(record_criterion):
    P = parse_partition("123,321|132|213|231|312")
    one = parse_partition("123,213,321")
    items = {
        "tail_size(14238576)=4": tail_size(parse_perm("14238576")) == 4,
        "4213 omni": leaning_of(parse_perm("4213")) is Leaning.OMNI,
        "456 in 1456237 left polarized": polarization(parse_perm("1456237"), 2, 3) is Polarization.LEFT,
        "straighten(85671234)=87651234": straighten(
            parse_perm("85671234"), 2, one, StraighteningSet(frozenset({(1, 2, 3), (3, 2, 1)}), one)
        )
        == parse_perm("87651234"),
        "blocks(3124657)=[3,1,2,1]": irreducible_blocks(parse_perm("3124657")).sizes == [3, 1, 2, 1],
        "neighbors(1432657) contains 1234657, 1324657": {parse_perm("1234657"), parse_perm("1324657")}
        <= rearrangement_neighbors(parse_perm("1432657"), parse_partition("123,132,213,231,312,321")),
        "normal_form(125436)=123456": normal_form(parse_perm("125436"), P, default_straightening_set(P))
        == parse_perm("123456"),
    }
    failed = [name for name, ok in items.items() if not ok]
    record_criterion(9, not failed, f"{len(items) - len(failed)}/{len(items)} items; failing: {failed or 'none'}")
    assert not failed, failed
