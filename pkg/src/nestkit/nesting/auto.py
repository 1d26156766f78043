"""Dispatch a poset of rank at most 3 to the best available construction."""
from __future__ import annotations

import logging

from ..conditions import check_conditions, thm8_witness
from ..errors import ConditionUnmet, Unsolved
from ..poset import ChainDecomposition, GradedPoset, decomposition, dual
from ..transforms import add_ghosts, strip_ghosts
from .rank3 import thm1_nesting, thm2_nesting
from .search import find_nesting_profile
from .small import rank1_nesting, rank2_nesting
from .verify import verify_nesting

log = logging.getLogger(__name__)


def auto_nest(P: GradedPoset) -> ChainDecomposition:
    """Return a verified nesting; ``method`` names the construction used.

    Raises:
        Unsolved: no method produced a nesting. The exception carries the
            condition analysis of the rank tuple.
    """
    if P.rank > 3:
        raise ConditionUnmet(f"rank {P.rank} posets are out of scope")
    D = _dispatch(P)
    if D is not None and verify_nesting(P, D).ok:
        return D
    fallback = find_nesting_profile(P)
    if fallback is not None:
        return fallback
    report = None
    r0, r1, r2 = P.rank_sizes[:3] if P.rank == 3 else (0, 0, 0)
    if P.rank == 3 and 0 < r0 < r1 < r2:
        report = check_conditions(r0, r1, r2)
    log.warning("no nesting found for rank sizes %s", P.rank_sizes)
    raise Unsolved(f"no nesting found for rank sizes {list(P.rank_sizes)}", report)


def _dispatch(P: GradedPoset):
    if P.rank == 0:
        return decomposition([[(0, a)] for a in range(P.rank_sizes[0])], "rank0")
    if P.rank == 1:
        return rank1_nesting(P)
    if P.rank == 2:
        return rank2_nesting(P)
    r0, r1, r2, r3 = P.rank_sizes
    if r0 != r3:
        end = 0 if r0 < r3 else 3
        G, trace = add_ghosts(P, end, abs(r0 - r3))
        inner = _dispatch(G)
        if inner is None:
            return None
        return strip_ghosts(inner, trace).with_method(f"ghost+{inner.method}")
    if r1 > r2:
        inner = _dispatch(dual(P))
        if inner is None:
            return None
        n = P.rank
        chains = [[(n - l, i) for l, i in reversed(chain)] for chain in inner.chains]
        return decomposition(chains, f"dual+{inner.method}")
    if r0 < r1 < r2:
        if (r2 - 1) % r0 == 0 and (r2 - 1) % r1 == 0:
            return thm1_nesting(P)
        if thm8_witness(r0, r1, strict=True) is not None:
            return thm2_nesting(P)
    return find_nesting_profile(P)
