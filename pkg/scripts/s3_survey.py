"""Survey all 203 partitions of S_3: confluence, overlap hypothesis and formula agreement.

Writes one CSV row per partition.
"""

import argparse
import csv
import sys
import time

from patrep.counting import check_overlap_hypothesis, compare_counts, k_for
from patrep.equivalence import check_confluence
from patrep.partition import default_straightening_set
from patrep.perm import format_perm
from patrep.verify import s3_partitions


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()

    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(fh)
    writer.writerow(["partition", "straightening", "k", "confluent", "hypothesis", "witness", "formula_agrees"])
    t0 = time.perf_counter()
    tally = {"confluent": 0, "formula": 0}
    for P in s3_partitions():
        C = default_straightening_set(P)
        confluent = all(check_confluence(n, P, C).confluent for n in range(3, args.max_n + 1))
        ok, witness = check_overlap_hypothesis(P, C)
        agrees = ok and all(r.agree for r in compare_counts(range(3, args.max_n + 1), P, C))
        tally["confluent"] += confluent
        tally["formula"] += agrees
        writer.writerow([P.spec(), C.spec(), k_for(P), confluent, ok, format_perm(witness) if witness else "", agrees])
    if args.output:
        fh.close()
    print(
        f"{tally['confluent']}/203 confluent for n<={args.max_n}, "
        f"{tally['formula']} match the formula ({time.perf_counter() - t0:.1f}s)",
        file=sys.stderr,
    )


if __name__ == "__main__":
    main()
