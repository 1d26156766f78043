"""Construction and verification of nested chain decompositions."""
from .auto import auto_nest
from .rank3 import thm1_nesting, thm2_nesting
from .search import find_nesting_profile
from .small import lemma_avoid_partition, rank1_nesting, rank2_nesting, symmetric2_chains
from .verify import NestingReport, forced_profile, profile_counts, verify_nesting

__all__ = [
    "NestingReport",
    "auto_nest",
    "find_nesting_profile",
    "forced_profile",
    "lemma_avoid_partition",
    "profile_counts",
    "rank1_nesting",
    "rank2_nesting",
    "symmetric2_chains",
    "thm1_nesting",
    "thm2_nesting",
    "verify_nesting",
]
