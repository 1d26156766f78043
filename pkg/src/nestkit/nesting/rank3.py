"""Nestings of canonical rank-3 posets ``(r0, r1, r2, r0)`` with ``r0 < r1 < r2``."""
from __future__ import annotations

from ..conditions import thm8_witness
from ..errors import Anomaly, ConditionUnmet
from ..nm import nm_check
from ..poset import ChainDecomposition, GradedPoset, decomposition, induced_levels, remove_element
from ..transforms import add_ghosts, bunch_level, clone_level
from .search import find_nesting_profile
from .small import lemma_avoid_partition, rank2_nesting


def _canonical_sizes(P: GradedPoset) -> tuple[int, int, int]:
    if P.rank != 3:
        raise ConditionUnmet(f"expected a poset of rank 3, got rank {P.rank}")
    r0, r1, r2, r3 = P.rank_sizes
    if not (r3 == r0 and r0 < r1 < r2):
        raise ConditionUnmet(f"rank sizes {P.rank_sizes} are not of the form (r0, r1, r2, r0) with r0 < r1 < r2")
    return r0, r1, r2


def thm1_nesting(P: GradedPoset) -> ChainDecomposition:
    """Nesting when both ``r0`` and ``r1`` divide ``r2 - 1``.

    Element ``(2, 0)`` is removed; the remainder is still NM and has ``r1``
    dividing its third rank number, so an exact search finds its nesting.
    The removed element is then added back as a singleton chain.
    """
    r0, r1, r2 = _canonical_sizes(P)
    if (r2 - 1) % r0 or (r2 - 1) % r1:
        raise ConditionUnmet(f"r0={r0} and r1={r1} must both divide r2-1={r2 - 1}")
    reduced, reindex = remove_element(P, (2, 0))
    if not nm_check(reduced).holds:
        raise Anomaly("removing an element from level 2 destroyed the NM property")
    inner = find_nesting_profile(reduced)
    if inner is None:
        raise Anomaly(f"no nesting found for the reduced poset {reduced.rank_sizes}")
    back = {new: old for old, new in reindex.items()}
    chains = [[(l, back[i] if l == 2 else i) for l, i in chain] for chain in inner.chains]
    chains.append([(2, 0)])
    return decomposition(chains, "thm1")


def thm2_nesting(P: GradedPoset) -> ChainDecomposition:
    """Nesting when ``k r0 < r1 < k (r0 + 1)`` for some ``k``.

    With ``t = r1 - k r0``:

    1. clone the top level ``k`` times in the poset on levels 1..3 and nest
       it; each clone of top element ``y_i`` sits on a full chain;
    2. bunch level 1 into ``A_i`` (bottoms of the chains through clones of
       ``y_i``) plus one extra block of the ``t`` leftovers and ``k - t``
       ghosts;
    3. match ``L_0`` against the blocks while avoiding the extra block;
    4. extend one chain through a clone of ``y_i`` down to the element
       matched with ``A_i``, and cut the clone tops off the other ``k - 1``.
    """
    r0, r1, r2 = _canonical_sizes(P)
    k = thm8_witness(r0, r1, strict=True)
    if k is None:
        raise ConditionUnmet(f"no k with k*r0 < r1 < k*(r0+1) for r0={r0}, r1={r1}")
    t = r1 - k * r0

    upper, clones = clone_level(induced_levels(P, 1, 3), 2, k)
    nest_upper = rank2_nesting(upper)
    # full chains of the upper poset, keyed by the original top element
    through: dict[int, list[tuple[int, int]]] = {y: [] for y in range(r0)}
    leftovers, partial, singles = [], [], []
    for chain in nest_upper.chains:
        levels = [e.level for e in chain]
        if levels == [0, 1, 2]:
            through[chain[2].index % r0].append((chain[0].index, chain[1].index))
        elif levels == [0, 1]:
            leftovers.append(chain[0].index)
            partial.append((chain[0].index, chain[1].index))
        elif levels == [1]:
            singles.append(chain[0].index)
        else:
            raise Anomaly(f"unexpected chain shape {levels} in the nested upper poset")
    if any(len(v) != k for v in through.values()) or len(leftovers) != t:
        raise Anomaly("upper nesting does not have the expected profile")

    lower, ghost_trace = add_ghosts(induced_levels(P, 0, 1), 1, k - t)
    blocks = [sorted(z for z, _ in through[y]) for y in range(r0)]
    blocks.append(sorted(leftovers) + [g.index for g in ghost_trace.ghost_ids])
    bunched, _ = bunch_level(lower, 1, blocks)
    matching = lemma_avoid_partition(bunched, (1, r0))

    chains = []
    for chain in matching.chains:
        if len(chain) == 1:
            continue
        x, block = chain[0].index, chain[1].index
        below_x = P.up[0][x]
        pairs = sorted(through[block])
        pick = next(i for i, (z, _) in enumerate(pairs) if below_x >> z & 1)
        for i, (z, mid) in enumerate(pairs):
            if i == pick:
                chains.append([(0, x), (1, z), (2, mid), (3, block)])
            else:
                chains.append([(1, z), (2, mid)])
    chains += [[(1, z), (2, mid)] for z, mid in partial]
    chains += [[(2, mid)] for mid in singles]
    return decomposition(chains, "thm2", (clones.to_json(), ghost_trace.to_json()))
