"""NM posets for testing: complete posets, random pruning, exhaustive enumeration."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .errors import BudgetExceeded, ExhaustedAttempts
from .nm import nm_adjacent_flow
from .poset import GradedPoset, complete_poset

log = logging.getLogger(__name__)

DEFAULT_PAIR_BUDGET = 20

__all__ = ["GenSpec", "complete_poset", "random_nm_poset", "enumerate_nm_posets", "nm_bipartite_tables"]


@dataclass(frozen=True)
class GenSpec:
    rank_sizes: tuple
    seed: int = 0
    target_density: float = 0.5
    max_attempts: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "rank_sizes", tuple(int(r) for r in self.rank_sizes))
        if not self.rank_sizes or any(r < 1 for r in self.rank_sizes):
            raise ValueError(f"invalid rank sizes {self.rank_sizes}")
        if not 0 < self.target_density <= 1:
            raise ValueError("target_density must be in (0, 1]")


def _pair_is_nm(r_lo: int, r_hi: int, rows) -> bool:
    pair = GradedPoset((r_lo, r_hi), (rows,))
    return nm_adjacent_flow(pair, 0).holds


def random_nm_poset(spec: GenSpec, strict: bool = False) -> GradedPoset:
    """Prune cover edges of the complete poset at random while NM survives.

    Each attempt removes a uniformly chosen remaining cover and keeps the
    removal only if both endpoints keep a cover on that side and the level
    pair stays NM. A cover whose removal fails is never retried: removing
    more edges only shrinks shadows. Generation stops once the fraction of
    remaining covers reaches ``target_density`` or ``max_attempts`` is spent.

    If the target was not reached, ``strict=True`` raises
    :class:`ExhaustedAttempts` carrying the best-so-far poset; otherwise that
    poset is returned and the shortfall is logged.
    """
    rng = random.Random(spec.seed)
    sizes = spec.rank_sizes
    up = [[(1 << sizes[i + 1]) - 1] * sizes[i] for i in range(len(sizes) - 1)]
    candidates = [(i, a, b) for i in range(len(up)) for a in range(sizes[i]) for b in range(sizes[i + 1])]
    total = len(candidates)
    remaining = total
    target = spec.target_density * total
    attempts = 0
    while remaining > target and candidates and attempts < spec.max_attempts:
        attempts += 1
        i, a, b = candidates.pop(rng.randrange(len(candidates)))
        row = up[i][a] & ~(1 << b)
        if not row or not any(up[i][x] >> b & 1 for x in range(sizes[i]) if x != a):
            continue
        trial = list(up[i])
        trial[a] = row
        if _pair_is_nm(sizes[i], sizes[i + 1], trial):
            up[i] = trial
            remaining -= 1
    poset = GradedPoset.from_masks(sizes, up)
    if remaining > target:
        msg = f"density target {spec.target_density} not reached for {sizes} (got {remaining}/{total})"
        if strict:
            raise ExhaustedAttempts(msg, poset)
        log.info(msg)
    return poset


def nm_bipartite_tables(r_lo: int, r_hi: int, budget: int = DEFAULT_PAIR_BUDGET) -> list[tuple[int, ...]]:
    """Every NM cover table between levels of sizes ``r_lo`` and ``r_hi``.

    Tables are listed in increasing order of their edge bitmask.
    """
    edges = r_lo * r_hi
    if edges > budget:
        raise BudgetExceeded(f"{r_lo}x{r_hi} level pair needs 2^{edges} candidates; budget is 2^{budget}")
    out = []
    width = (1 << r_hi) - 1
    for code in range(1 << edges):
        rows = tuple((code >> (a * r_hi)) & width for a in range(r_lo))
        if all(rows) and _pair_is_nm(r_lo, r_hi, rows):
            out.append(rows)
    return out


def enumerate_nm_posets(
    rank_sizes, cap: Optional[int] = None, budget: int = DEFAULT_PAIR_BUDGET
) -> Iterator[GradedPoset]:
    """Yield every labeled NM poset with the given rank sizes, up to ``cap``.

    NM is decided pair by pair and implies gradedness (a singleton always has
    a nonempty shadow), so the NM posets are exactly the products of NM cover
    tables of consecutive pairs. The order is deterministic.
    """
    sizes = tuple(int(r) for r in rank_sizes)
    if len(sizes) == 1:
        yield GradedPoset.from_masks(sizes, [])
        return
    tables = [nm_bipartite_tables(sizes[i], sizes[i + 1], budget) for i in range(len(sizes) - 1)]
    for count, combo in enumerate(product(*tables)):
        if cap is not None and count >= cap:
            return
        yield GradedPoset(sizes, combo)
