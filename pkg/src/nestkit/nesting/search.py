"""Exact search for a nesting with the forced rank-set profile.

A nesting of a poset with rank sizes ``r`` has ``max(r)`` chains and chain
slot ``c`` (largest first) covers exactly the ranks ``{j : r_j > c}``. The
search fills the slots level by level, choosing which element of ``L_j``
goes to each slot ``c < r_j``. Two prunings keep it small:

* fresh slots with identical rank-sets are interchangeable, so they take
  elements in increasing index order;
* after each level, every later level must still admit a perfect matching
  between its elements and its slots, where a slot accepts an element when
  it lies above the slot's current top.
"""
from __future__ import annotations

from typing import Optional

from ..flow import saturates
from ..poset import ChainDecomposition, GradedPoset, decomposition
from .verify import forced_profile


def find_nesting_profile(P: GradedPoset) -> Optional[ChainDecomposition]:
    """Return a nesting of ``P`` or ``None`` once the space is exhausted."""
    sizes = P.rank_sizes
    n = P.rank
    slots = forced_profile(sizes)
    width = len(slots)
    full = [(1 << r) - 1 for r in sizes]
    # top[c] = (level, index) of the highest element placed in slot c
    top: list = [None] * width
    placed = [[-1] * r for r in sizes]

    def allowed(c, j):
        t = top[c]
        if t is None:
            return full[j]
        return P.reach(t[0], j)[t[1]]

    def future_ok(j):
        for k in range(j + 1, n + 1):
            if not saturates([allowed(c, k) for c in range(sizes[k])]):
                return False
        return True

    def fill_level(j):
        if j > n:
            return True
        active = sizes[j]
        masks = [allowed(c, j) for c in range(active)]
        # a fresh slot must take a larger index than the previous fresh slot of its group
        prev_fresh = [-1] * active
        last_seen = {}
        for c in range(active):
            if top[c] is None:
                key = slots[c]
                prev_fresh[c] = last_seen.get(key, -1)
                last_seen[key] = c
        saved = top[:active]

        def assign(c, used):
            if c == active:
                for d in range(active):
                    top[d] = (j, placed[j][d])
                if future_ok(j) and fill_level(j + 1):
                    return True
                top[:active] = saved
                return False
            options = masks[c] & ~used
            p = prev_fresh[c]
            if p >= 0:
                options &= ~((2 << placed[j][p]) - 1)
            while options:
                low = options & -options
                options ^= low
                placed[j][c] = low.bit_length() - 1
                rest = [masks[d] & ~(used | low) for d in range(c + 1, active)]
                if saturates(rest) and assign(c + 1, used | low):
                    return True
            return False

        if not saturates(masks):
            return False
        return assign(0, 0)

    if not fill_level(0):
        return None
    chains = []
    for c in range(width):
        chains.append([(j, placed[j][c]) for j in slots[c]])
    return decomposition(chains, "search")
