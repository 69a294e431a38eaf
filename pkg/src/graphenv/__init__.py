"""Extremal monotone and subadditive envelopes on subgraph lattices."""

from .envelopes import (
    EnvelopeKind,
    EnvelopeResult,
    SandwichResult,
    Verdict,
    envelope,
    is_monotone_decreasing,
    is_monotone_increasing,
    is_subadditive,
    is_superadditive_disjoint,
    monotone_majorant,
    monotone_minorant,
    sandwich_monotone,
    sandwich_subadditive,
    subadditive_minorant,
    superadditive_majorant,
)
from .lattice import (
    Cover,
    Graph,
    Lattice,
    Subgraph,
    build_graph,
    enumerate_lattice,
    intersect,
    is_contained,
    union,
)
from .weights import (
    BuiltinWeight,
    WeightTable,
    constant_table,
    eval_builtin,
    load_table,
    random_table,
    tabulate,
)

__version__ = "0.1.0"
