"""Exact covering counts, divergence rates and valence bond entropy for spin ladders."""

from ladderfib.core import (
    BadCut,
    DopingState,
    LadderError,
    LadderSpec,
    OddRungsUndopedThreeLeg,
    UnsupportedLegs,
    max_dimers,
    validate_spec,
)
from ladderfib.sequences import (
    CountTable,
    RecursionForm,
    build_table,
    doped_count,
    doped_count_compact,
    undoped_count,
)

__all__ = [
    "BadCut",
    "CountTable",
    "DopingState",
    "LadderError",
    "LadderSpec",
    "OddRungsUndopedThreeLeg",
    "RecursionForm",
    "UnsupportedLegs",
    "build_table",
    "doped_count",
    "doped_count_compact",
    "max_dimers",
    "undoped_count",
    "validate_spec",
]

__version__ = "0.1.0"
