"""End-to-end drivers built on the hidden subgroup machinery."""

from ..trace import RunTrace
from .deutsch import constant_oracle, deutsch_jozsa, random_balanced_oracle
from .dlog import DlogConfig, discrete_log, dlog_instance
from .factoring import FactorConfig, factor, factor_attempt
from .graphiso import (
    Graph,
    Permutation,
    are_isomorphic,
    automorphism_mask,
    graph_iso_harness,
    graph_union,
    load_graph,
    parse_graph,
    permute_adjacency,
    stabilizer_report,
    swap_extended_group,
)
from .simon import random_simon_oracle, simon_driver

__all__ = [
    "RunTrace",
    "FactorConfig",
    "factor",
    "factor_attempt",
    "DlogConfig",
    "discrete_log",
    "dlog_instance",
    "simon_driver",
    "random_simon_oracle",
    "deutsch_jozsa",
    "constant_oracle",
    "random_balanced_oracle",
    "Graph",
    "Permutation",
    "parse_graph",
    "load_graph",
    "graph_union",
    "swap_extended_group",
    "permute_adjacency",
    "automorphism_mask",
    "are_isomorphic",
    "stabilizer_report",
    "graph_iso_harness",
]
