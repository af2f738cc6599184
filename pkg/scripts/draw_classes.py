"""Write DOT files for the class of 123456 under {123,321} and the blocks of 3124657.

    python scripts/draw_classes.py --out figures/
    dot -Tpng figures/class_123456_straightening.dot -o class.png
"""

import argparse
from pathlib import Path

from patrep.equivalence import class_dot, enumerate_classes
from patrep.partition import StraighteningSet, parse_partition
from patrep.perm import format_perm, identity, parse_perm
from patrep.sc_family import irreducible_blocks


def blocks_dot(w) -> str:
    lines = ["digraph blocks {", "  rankdir=LR;", "  node [shape=record];"]
    fields = [format_perm(b) for b in irreducible_blocks(w).blocks]
    lines.append(f'  w [label="{"|".join(fields)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--n", type=int, default=6)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    P = parse_partition("123,321")
    C = StraighteningSet(frozenset({(1, 2, 3), (3, 2, 1)}), P)
    cls = enumerate_classes(args.n, P).class_of(identity(args.n))
    (out / "class_123456.dot").write_text(class_dot(cls.members, P))
    (out / "class_123456_straightening.dot").write_text(class_dot(cls.members, P, C))
    w = parse_perm("3124657")
    (out / "blocks_3124657.dot").write_text(blocks_dot(w))
    print(f"class of {format_perm(identity(args.n))}: {cls.size} permutations")
    print(f"blocks of {format_perm(w)}: {irreducible_blocks(w).sizes}")


if __name__ == "__main__":
    main()
