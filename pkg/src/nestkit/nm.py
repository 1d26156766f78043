"""Normalized matching (NM) checks.

A level pair ``(i, j)`` has the NM property from ``i`` to ``j`` when every
``S ⊆ L_i`` satisfies ``|S| * r_j <= |shadow_j(S)| * r_i``. Two deciders are
provided: exhaustive subset enumeration (the oracle) and a max-flow
certificate (the workhorse). Everything is exact integer arithmetic.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import Anomaly, IndexOutOfRange, LevelTooLarge
from .flow import FlowNetwork
from .poset import GradedPoset, mask_of

DEFAULT_SUBSET_CAP = 20
UP, DOWN = "up", "down"


@dataclass(frozen=True)
class NmReport:
    holds: bool
    witness: Optional[tuple[int, int, frozenset]] = None
    checked_pairs: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"holds": self.holds, "checked_pairs": [list(p) for p in self.checked_pairs]}
        if self.witness is not None:
            i, j, S = self.witness
            out["witness"] = {"level": i, "target": j, "set": sorted(S)}
        return out


def subset_cap() -> int:
    value = os.environ.get("NESTKIT_MAX_SUBSETS")
    return int(value) if value else DEFAULT_SUBSET_CAP


def violates(P: GradedPoset, i: int, S, j: int) -> bool:
    """Whether ``S ⊆ L_i`` breaks the NM inequality toward ``L_j``."""
    gamma = P.shadow_mask(i, mask_of(S), j)
    return len(S) * P.rank_sizes[j] > bin(gamma).count("1") * P.rank_sizes[i]


def _levels(P: GradedPoset, i: int, direction: str) -> tuple[int, int]:
    if not 0 <= i < P.rank:
        raise IndexOutOfRange(f"level pair ({i},{i + 1}) outside poset of rank {P.rank}")
    if direction == UP:
        return i, i + 1
    if direction == DOWN:
        return i + 1, i
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def nm_adjacent_bruteforce(P: GradedPoset, i: int, direction: str = UP, cap: Optional[int] = None) -> NmReport:
    """Enumerate every subset of the source level.

    The witness on failure has minimum cardinality, ties broken by the
    lexicographically smallest index tuple.

    Raises:
        LevelTooLarge: the source level exceeds ``cap`` (default 20, or the
            ``NESTKIT_MAX_SUBSETS`` environment variable).
    """
    src, dst = _levels(P, i, direction)
    cap = subset_cap() if cap is None else cap
    r_src, r_dst = P.rank_sizes[src], P.rank_sizes[dst]
    if r_src > cap:
        raise LevelTooLarge(f"level {src} has {r_src} elements; cap is {cap}")
    reach = P.reach(src, dst)
    for k in range(1, r_src + 1):
        for S in combinations(range(r_src), k):
            gamma = 0
            for a in S:
                gamma |= reach[a]
            if k * r_dst > bin(gamma).count("1") * r_src:
                return NmReport(False, (src, dst, frozenset(S)), [(src, dst)])
    return NmReport(True, None, [(src, dst)])


def nm_adjacent_flow(P: GradedPoset, i: int, direction: str = UP) -> NmReport:
    """Decide NM for one adjacent pair with a max-flow certificate.

    Network: source -> x (capacity r_dst), x -> y for comparable pairs
    (effectively unbounded), y -> sink (capacity r_src). NM holds iff the
    max flow equals r_src * r_dst; otherwise the source side of a minimum
    cut, restricted to the source level, violates the inequality.
    """
    src, dst = _levels(P, i, direction)
    r_src, r_dst = P.rank_sizes[src], P.rank_sizes[dst]
    reach = P.reach(src, dst)
    net = FlowNetwork(2 + r_src + r_dst)
    s, t = 0, 1
    inf = r_src * r_dst + 1
    for a in range(r_src):
        net.add_edge(s, 2 + a, r_dst)
        m = reach[a]
        b = 0
        while m:
            if m & 1:
                net.add_edge(2 + a, 2 + r_src + b, inf)
            m >>= 1
            b += 1
    for b in range(r_dst):
        net.add_edge(2 + r_src + b, t, r_src)
    value = net.max_flow(s, t)
    if value == r_src * r_dst:
        return NmReport(True, None, [(src, dst)])
    side = net.residual_reachable(s)
    S = frozenset(a for a in range(r_src) if 2 + a in side)
    return NmReport(False, (src, dst, S), [(src, dst)])


def nm_check(P: GradedPoset) -> NmReport:
    """Check every adjacent level pair in both directions.

    NM is symmetric between two levels and composes across a middle level, so
    the adjacent pairs certify the whole poset. Running both directions is a
    self-check of the flow code: disagreement raises :class:`Anomaly`.
    """
    checked = []
    for i in range(P.rank):
        up = nm_adjacent_flow(P, i, UP)
        down = nm_adjacent_flow(P, i, DOWN)
        checked += up.checked_pairs + down.checked_pairs
        if up.holds != down.holds:
            raise Anomaly(f"NM directions disagree on levels ({i},{i + 1})")
        if not up.holds:
            return NmReport(False, up.witness, checked)
    return NmReport(True, None, checked)


def is_nm(P: GradedPoset) -> bool:
    return nm_check(P).holds
