"""Nested chain decompositions of normalized matching posets of rank <= 3."""
from .conditions import ConditionReport, check_conditions, enumerate_open, f_value
from .generators import GenSpec, complete_poset, enumerate_nm_posets, random_nm_poset
from .nesting import (
    NestingReport,
    auto_nest,
    find_nesting_profile,
    lemma_avoid_partition,
    rank1_nesting,
    rank2_nesting,
    symmetric2_chains,
    thm1_nesting,
    thm2_nesting,
    verify_nesting,
)
from .nm import NmReport, nm_adjacent_bruteforce, nm_adjacent_flow, nm_check
from .poset import (
    ChainDecomposition,
    ElementId,
    GradedPoset,
    build_poset,
    chain_poset,
    dual,
    induced_levels,
    remove_element,
    shadow,
)
from .transforms import TransformTrace, add_ghosts, bunch_level, clone_level, strip_ghosts

__version__ = "0.1.0"
