"""Checking nested chain decompositions."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from ..poset import ChainDecomposition, GradedPoset


@dataclass(frozen=True)
class NestingReport:
    is_partition: bool
    chains_valid: bool
    is_nested: bool
    chain_count: int
    profile: dict = field(default_factory=dict)
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.is_partition and self.chains_valid and self.is_nested

    def to_json(self) -> dict:
        return {
            "is_partition": self.is_partition,
            "chains_valid": self.chains_valid,
            "is_nested": self.is_nested,
            "chain_count": self.chain_count,
            "profile": [[list(rs), n] for rs, n in sorted(self.profile.items(), key=_profile_key)],
            "failure": self.failure,
        }


def _profile_key(item):
    rank_set, _ = item
    return (-len(rank_set), rank_set)


def forced_profile(rank_sizes) -> list[tuple[int, ...]]:
    """Rank-set of every chain slot in a nesting, largest first.

    In a nesting the chains through rank ``j`` are exactly the ``r_j`` chains
    with the largest rank-sets, so slot ``c`` holds ``{j : r_j > c}``.
    """
    width = max(rank_sizes)
    return [tuple(j for j, r in enumerate(rank_sizes) if r > c) for c in range(width)]


def profile_counts(rank_sizes) -> dict[tuple[int, ...], int]:
    return dict(Counter(forced_profile(rank_sizes)))


def verify_nesting(P: GradedPoset, D: ChainDecomposition) -> NestingReport:
    """Check partition, chain validity and the nesting implication.

    Failures are reported, never raised.
    """
    chains = [tuple(c) for c in D.chains]
    profile = dict(Counter(tuple(sorted({e[0] for e in c})) for c in chains))
    count = len(chains)

    is_partition, failure = True, None
    seen = set()
    for chain in chains:
        if not chain:
            is_partition, failure = False, "empty chain"
            break
        for e in chain:
            lvl, idx = e
            if not (0 <= lvl <= P.rank and 0 <= idx < P.rank_sizes[lvl]):
                is_partition, failure = False, f"element {tuple(e)} not in poset"
                break
            if e in seen:
                is_partition, failure = False, f"not a partition: element {tuple(e)} repeated"
                break
            seen.add(e)
        if not is_partition:
            break
    if is_partition and len(seen) != P.size:
        missing = next(e for e in P.elements() if e not in seen)
        is_partition, failure = False, f"not a partition: element {tuple(missing)} uncovered"

    chains_valid = True
    for chain in chains:
        for lo, hi in zip(chain, chain[1:]):
            ok = (
                0 <= lo[0] <= P.rank and 0 <= hi[0] <= P.rank
                and 0 <= lo[1] < P.rank_sizes[lo[0]] and 0 <= hi[1] < P.rank_sizes[hi[0]]
                and P.less(lo, hi)
            )
            if not ok:
                chains_valid = False
                failure = failure or f"chain {_fmt(chain)}: {tuple(lo)} is not below {tuple(hi)}"
                break
        if not chains_valid:
            break

    is_nested = True
    rank_sets = sorted(profile, key=lambda rs: (len(rs), rs))
    for a, small in enumerate(rank_sets):
        for big in rank_sets[a + 1 :]:
            if not set(small) <= set(big):
                is_nested = False
                failure = failure or f"rank-sets {set(small)} and {set(big)} are not nested"
                break
        if not is_nested:
            break

    return NestingReport(is_partition, chains_valid, is_nested, count, profile, failure)


def _fmt(chain) -> str:
    return "{" + ", ".join(f"({l},{i})" for l, i in chain) + "}"
