"""Command line entry point: ``patrep <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad partition text, enumeration guard, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .cache import CacheMismatch, ResultCache
from .counting import (
    brute_count,
    check_overlap_hypothesis,
    formula_count,
    k_for,
    k_for_n,
    root_count,
)
from .equivalence import (
    EnumerationTooLarge,
    check_confluence,
    class_dot,
    enumerate_classes,
    find_diamond_violation,
)
from .partition import (
    PartitionError,
    ReplacementPartition,
    StraighteningSet,
    parse_partition,
    parse_straightening,
)
from .perm import PermutationError, format_perm, parse_perm
from .rewrite import StepBudgetExceeded, straightener
from .sc_family import SequenceTable, irreducible_blocks, is_c_toothed, t_sequence, uncorrected_series_t3
from .verify import SUITES

DEFAULT_GUARD = 10


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    partition: Optional[ReplacementPartition] = None
    straightening: Optional[StraighteningSet] = None
    n_values: list[int] = field(default_factory=list)
    c: Optional[int] = None
    method: Optional[str] = None
    fmt: str = "json"
    cache: Optional[ResultCache] = None
    max_n: int = DEFAULT_GUARD
    workers: int = 1
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        max_n = args.max_enum if args.allow_large else min(args.max_enum, DEFAULT_GUARD)
        cfg = cls(command=args.command, max_n=max_n, workers=args.workers, fmt=getattr(args, "format", "json") or "json")
        if getattr(args, "partition", None):
            try:
                cfg.partition = parse_partition(args.partition)
            except PartitionError as exc:
                raise UsageError(str(exc)) from None
        if cfg.partition is not None:
            spec = getattr(args, "straightening", None) or "auto"
            target = cfg.partition.padded() if args.command == "count" else cfg.partition
            try:
                cfg.straightening = parse_straightening(spec, target)
            except (PartitionError, ValueError) as exc:
                raise UsageError(str(exc)) from None
        n_values = []
        if getattr(args, "n", None) is not None:
            n_values = [args.n]
        if getattr(args, "n_range", None):
            lo, _, hi = args.n_range.partition("..")
            try:
                n_values = list(range(int(lo), int(hi) + 1))
            except ValueError:
                raise UsageError(f"bad --n-range {args.n_range!r}; expected A..B") from None
        for n in n_values:
            if n > cfg.max_n:
                raise UsageError(f"n={n} exceeds the enumeration guard ({cfg.max_n}); pass --max-enum with --allow-large")
        cfg.n_values = n_values
        cfg.c = getattr(args, "c", None)
        cfg.method = getattr(args, "method", None)
        if args.command in ("count", "sequence", "sc-sequence"):
            cfg.cache = ResultCache.from_env(args.cache_dir, args.verify_cache)
        cfg.options = {k: v for k, v in vars(args).items() if k not in ("func",)}
        return cfg


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in columns})
    return buf.getvalue()


def cmd_classes(cfg: RunConfig) -> int:
    n = cfg.n_values[0]
    P = cfg.partition
    decomp = enumerate_classes(
        n, P, with_roots=cfg.options["roots"], C=cfg.straightening, max_n=cfg.max_n, workers=cfg.workers
    )
    if cfg.fmt == "csv":
        rows = [
            {"class": i, "size": cls.size, "root": "" if cls.root is None else format_perm(cls.root), "members": " ".join(format_perm(m) for m in cls.members)}
            for i, cls in enumerate(decomp.classes)
        ]
        _emit(_csv(rows, ["class", "size", "root", "members"]), cfg.options["output"])
    else:
        _emit(json.dumps(decomp.to_json(), indent=1) + "\n", cfg.options["output"])
    dot = cfg.options.get("dot")
    if dot:
        members = [m for cls in decomp.classes for m in cls.members]
        if cfg.options.get("dot_class"):
            members = list(decomp.class_of(parse_perm(cfg.options["dot_class"])).members)
        Path(dot).write_text(class_dot(members, P, cfg.straightening))
    return 0


def cmd_count(cfg: RunConfig) -> int:
    P = cfg.partition
    padded = P.padded()
    C = cfg.straightening
    method = cfg.method
    methods = ["brute", "formula", "roots"] if method == "all" else [method]
    k_reading = cfg.options["k_reading"]
    hypothesis = None
    if "formula" in methods:
        hypothesis = check_overlap_hypothesis(padded, C)
    rows = []
    for n in cfg.n_values:
        row: dict = {"n": n, "brute": None, "formula": None, "roots": None}
        if "brute" in methods:
            row["brute"] = cfg.cache.get_or_compute((padded.spec(), n, "brute"), lambda: brute_count(n, P, cfg.max_n))
        if "roots" in methods:
            key = (padded.spec() + "/" + C.spec(), n, "roots")
            row["roots"] = cfg.cache.get_or_compute(key, lambda: root_count(n, padded, C))
        if "formula" in methods and hypothesis[0] and n >= P.c:
            k = k_for(padded) if k_reading == "c" else k_for_n(padded, n)
            row["formula"] = formula_count(n, P.c, k) if k >= 0 else None
        vals = {v for key, v in row.items() if key != "n" and v is not None}
        row["agree"] = len(vals) <= 1
        rows.append(row)
    cfg.cache.save()
    _emit(_csv(rows, ["n", "brute", "formula", "roots", "agree"]), cfg.options["output"])
    if hypothesis is not None and not hypothesis[0]:
        print(f"formula suppressed: overlapping unstraightened hits in {format_perm(hypothesis[1])}", file=sys.stderr)
    return 0 if all(r["agree"] for r in rows) else 1


def cmd_confluence(cfg: RunConfig) -> int:
    ok = True
    lines = []
    for n in cfg.n_values:
        report = check_confluence(n, cfg.partition, cfg.straightening, max_n=cfg.max_n)
        data = report.to_json()
        if cfg.options["diamond"]:
            bad = find_diamond_violation(n, cfg.partition, cfg.straightening, max_n=cfg.max_n)
            data["local_diamond"] = bad is None
            data["diamond_counterexample"] = None if bad is None else [format_perm(w) for w in bad]
            ok = ok and bad is None
        ok = ok and report.confluent
        lines.append(json.dumps(data))
    _emit("\n".join(lines) + "\n", cfg.options["output"])
    return 0 if ok else 1


def cmd_normal_form(cfg: RunConfig) -> int:
    s = straightener(cfg.partition, cfg.straightening)
    w = parse_perm(cfg.options["perm"])
    try:
        steps = s.trace(w, cfg.options["step_budget"])
    except StepBudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 1
    lines = [
        json.dumps({"step": i + 1, "start": start, "from": format_perm(a), "to": format_perm(b)})
        for i, (start, a, b) in enumerate(steps)
    ]
    root = steps[-1][2] if steps else w
    lines.append(json.dumps({"perm": format_perm(w), "root": format_perm(root), "steps": len(steps)}))
    _emit("\n".join(lines) + "\n", cfg.options["output"])
    return 0


def cmd_toothed(cfg: RunConfig) -> int:
    w = parse_perm(cfg.options["perm"])
    blocks = irreducible_blocks(w)
    data = {
        "perm": format_perm(w),
        "c": cfg.c,
        "blocks": [format_perm(b) if all(v < 10 for v in b) else ",".join(map(str, b)) for b in blocks.blocks],
        "block_sizes": blocks.sizes,
        "toothed": is_c_toothed(w, cfg.c),
    }
    _emit(json.dumps(data) + "\n", cfg.options["output"])
    return 0


def cmd_sequence(cfg: RunConfig) -> int:
    method = {"brute": "bruteforce"}.get(cfg.method, cfg.method)
    c, n_max = cfg.c, cfg.options["max_n"]
    if method in ("bruteforce", "both") and n_max > cfg.max_n:
        raise UsageError(f"--max-n {n_max} exceeds the enumeration guard ({cfg.max_n})")
    if method in ("recurrence", "both") and c != 3:
        raise UsageError("the recurrence is only known for c = 3")
    table = SequenceTable(c)
    for m in ("bruteforce", "recurrence"):
        if method not in (m, "both"):
            continue
        for n in range(c, n_max + 1):
            value = cfg.cache.get_or_compute(
                (f"T{c}", n, m), lambda n=n, m=m: t_sequence(c, n, m, n_min=n, max_n=cfg.max_n).entries[n][m]
            )
            table.entries.setdefault(n, {})[m] = value
    cfg.cache.save()
    if cfg.fmt == "bfile":
        _emit(table.bfile(), cfg.options["output"])
    else:
        rows = table.rows()
        if cfg.options["uncorrected_series"] and c == 3:
            series = uncorrected_series_t3(n_max)
            for row in rows:
                row["uncorrected"] = series.get(row["n"])
        columns = ["n"] + [k for k in (rows[0] if rows else {}) if k not in ("n", "agree")] + ["agree"]
        _emit(_csv(rows, columns), cfg.options["output"])
    return 0 if table.agree() else 1


def cmd_verify(cfg: RunConfig) -> int:
    suite = SUITES[cfg.options["suite"]]
    kwargs = {"trials": cfg.options["trials"], "seed": cfg.options["seed"]}
    if cfg.options["max_n"] is not None:
        kwargs["max_n"] = cfg.options["max_n"]
    checks = suite(**kwargs)
    text = "".join(chk.line() + "\n" + "".join(f"    {v}\n" for v in chk.violations) for chk in checks)
    _emit(text, cfg.options["output"])
    return 0 if all(chk.ok for chk in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patrep", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file whose keys provide defaults for the flags")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-enum", type=int, default=DEFAULT_GUARD, help="largest n enumerated exhaustively")
    common.add_argument("--allow-large", action="store_true", help="acknowledge --max-enum above the default guard")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cache-dir", default=None, help="defaults to $PATREP_CACHE_DIR; no caching when unset")
    common.add_argument("--verify-cache", action="store_true", help="recompute cached values and fail on mismatch")
    common.add_argument("-o", "--output", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def partition_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--partition", help='e.g. "123,321|132|213|231|312"')
        p.add_argument("--straightening", default="auto", help='"auto" or comma-separated patterns')

    p = sub.add_parser("classes", parents=[common], help="enumerate equivalence classes of S_n")
    partition_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--roots", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--dot", help="write a DOT graph of rearrangement and straightening moves")
    p.add_argument("--dot-class", help="restrict the DOT graph to the class of this permutation")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("count", parents=[common], help="count classes by enumeration, formula and roots")
    partition_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="A..B inclusive; overrides --n")
    p.add_argument("--method", choices=["brute", "formula", "roots", "all"], default="all")
    p.add_argument("--k-reading", choices=["c", "n"], default="c", help="k = c! - |P| (default) or n! - |P|")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("confluence", parents=[common], help="check confluence of the straightening operator")
    partition_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="A..B inclusive; overrides --n")
    p.add_argument("--diamond", action="store_true", help="also check the local diamond property")
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("normal-form", parents=[common], help="straighten a permutation to its root")
    partition_args(p)
    p.add_argument("--perm")
    p.add_argument("--step-budget", type=int, default=None)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("toothed", parents=[common], help="irreducible blocks and the c-toothed test")
    p.add_argument("--c", type=int)
    p.add_argument("--perm")
    p.set_defaults(func=cmd_toothed)

    for name in ("sc-sequence", "sequence"):
        p = sub.add_parser(name, parents=[common], help="|T_{c,n}|, the number of c-toothed permutations")
        p.add_argument("--c", type=int)
        p.add_argument("--max-n", type=int)
        p.add_argument("--method", choices=["brute", "recurrence", "both"], default="both")
        p.add_argument("--format", choices=["csv", "bfile"], default="csv")
        p.add_argument("--uncorrected-series", action="store_true", help="add the uncorrected generating-function column")
        p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES))
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--trials", type=int, default=100_000, help="random trials (lemmas suite)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


# flags that may come from the command line or the config file; "a/b" means either
REQUIRED = {
    "classes": ("--partition", "--n"),
    "count": ("--partition", "--n/--n-range"),
    "confluence": ("--partition", "--n/--n-range"),
    "normal-form": ("--partition", "--perm"),
    "toothed": ("--c", "--perm"),
    "sequence": ("--c", "--max-n"),
    "sc-sequence": ("--c", "--max-n"),
    "verify": ("--suite",),
}


def _missing(args: argparse.Namespace, flag: str) -> bool:
    return all(getattr(args, f.lstrip("-").replace("-", "_"), None) is None for f in flag.split("/"))


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        values = json.loads(Path(known.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {known.config}: {exc}")
    values = {k.replace("-", "_"): v for k, v in values.items()}
    for action in parser._subparsers._group_actions:  # noqa: SLF001
        for sp in action.choices.values():
            sp.set_defaults(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    _apply_config(parser, argv)
    args = parser.parse_args(argv)
    missing = [flag for flag in REQUIRED.get(args.command, ()) if _missing(args, flag)]
    if missing:
        parser.error(f"{args.command}: missing required " + ", ".join(missing))
    try:
        cfg = RunConfig.from_args(args)
        return args.func(cfg)
    except (UsageError, PermutationError, PartitionError, EnumerationTooLarge) as exc:
        print(f"patrep {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except CacheMismatch as exc:
        print(f"patrep {args.command}: cache mismatch: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
