"""Randomized construction of t-(n, k, {1, 2})-designs.

A partial Steiner system is packed first (Phase I); each t-set it leaves
uncovered then gets its own extra k-edge, chosen so that the extra edges
pairwise share fewer than t vertices (Phase II).  Every t-set ends up in one
or two edges.
"""
from .augmenter import AugmentConfig, AugmentReport, augment
from .core import (
    CoverageMap,
    Design,
    LeaveHypergraph,
    binomial,
    coverage_map,
    leave_hypergraph,
    rank_subset,
    unrank_subset,
)
from .errors import (
    ArithmeticOverflowError,
    ConstructionFailure,
    ContractError,
    MalformedDesignError,
    ParameterError,
    SamplingError,
)
from .fileformat import format_design, parse_design, read_design, write_design
from .packer import PackingConfig, epsilon_estimate, greedy_pack, leave_profile, nibble_pack, pack
from .pipeline import construct
from .verifier import brute_force_design_search, design_stats, verify_multiplicity

__all__ = [
    "ArithmeticOverflowError", "AugmentConfig", "AugmentReport", "ConstructionFailure", "ContractError",
    "CoverageMap", "Design", "LeaveHypergraph", "MalformedDesignError", "PackingConfig", "ParameterError",
    "SamplingError", "augment", "binomial", "brute_force_design_search", "construct", "coverage_map",
    "design_stats", "epsilon_estimate", "format_design", "greedy_pack", "leave_hypergraph", "leave_profile",
    "nibble_pack", "pack", "parse_design", "rank_subset", "read_design", "unrank_subset",
    "verify_multiplicity", "write_design",
]
