"""Tabulate |T_{c,n}| by enumeration and, for c = 3, by the recurrence."""

import argparse

from patrep.sc_family import t_sequence, uncorrected_series_t3


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--recurrence-to", type=int, default=30, help="extend the c=3 recurrence past enumeration")
    args = ap.parse_args()

    brute = t_sequence(args.c, args.max_n)
    if args.c != 3:
        for row in brute.rows():
            print(row["n"], row["bruteforce"])
        return
    rec = t_sequence(3, args.recurrence_to, "recurrence")
    uncorrected = uncorrected_series_t3(args.recurrence_to)
    print(f"{'n':>3} {'enum':>8} {'recurrence':>14} {'uncorrected':>14}")
    for n in sorted(rec.entries):
        enum = brute.entries.get(n, {}).get("bruteforce", "")
        print(f"{n:>3} {enum!s:>8} {rec.value(n):>14} {uncorrected[n]:>14}")


if __name__ == "__main__":
    main()
