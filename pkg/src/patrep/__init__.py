"""Doubly adjacent pattern-replacement equivalences on permutations."""

__version__ = "0.1.0"

from .counting import compare_counts, easy_family_count, formula_count  # noqa: E402
from .equivalence import (  # noqa: E402
    check_confluence,
    enumerate_classes,
    rearrangement_neighbors,
    verify_local_diamond,
)
from .partition import (  # noqa: E402
    ReplacementPartition,
    StraighteningSet,
    default_straightening_set,
    parse_partition,
)
from .perm import Leaning, leaning_of, parse_perm, pattern_of, tail_size  # noqa: E402
from .rewrite import normal_form, polarization, straighten  # noqa: E402
from .sc_family import irreducible_blocks, is_c_toothed, t_sequence  # noqa: E402

__all__ = [
    "Leaning",
    "ReplacementPartition",
    "StraighteningSet",
    "check_confluence",
    "compare_counts",
    "default_straightening_set",
    "easy_family_count",
    "enumerate_classes",
    "formula_count",
    "irreducible_blocks",
    "is_c_toothed",
    "leaning_of",
    "normal_form",
    "parse_partition",
    "parse_perm",
    "pattern_of",
    "polarization",
    "rearrangement_neighbors",
    "straighten",
    "t_sequence",
    "tail_size",
    "verify_local_diamond",
]
