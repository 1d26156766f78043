"""NM-preserving level transforms: ghosts, k-clones and m-bunches.

Each transform returns the new poset together with a :class:`TransformTrace`
recording how the new level relates to the old one, so decompositions of the
image can be pulled back to the source poset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import GhostInterior, IndexOutOfRange, NotAPartition, UnequalBlocks
from .poset import ChainDecomposition, ElementId, GradedPoset, mask_of

GHOST, CLONE, BUNCH = "ghost", "clone", "bunch"


@dataclass(frozen=True)
class TransformTrace:
    kind: str
    level: int
    ghost_ids: tuple[ElementId, ...] = ()
    clone_map: dict = field(default_factory=dict)
    bunch_blocks: dict = field(default_factory=dict)
    source: Optional[GradedPoset] = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "level": self.level}
        if self.kind == GHOST:
            out["ghost_ids"] = [list(g) for g in self.ghost_ids]
        elif self.kind == CLONE:
            out["clone_map"] = [[y, list(c)] for y, c in sorted(self.clone_map.items())]
        elif self.kind == BUNCH:
            out["bunch_blocks"] = [[b, sorted(a)] for b, a in sorted(self.bunch_blocks.items())]
        return out


def _check_level(P, i):
    if not 0 <= i <= P.rank:
        raise IndexOutOfRange(f"level {i} outside 0..{P.rank}")


def add_ghosts(P: GradedPoset, i: int, count: int) -> tuple[GradedPoset, TransformTrace]:
    """Append ``count`` ghosts to level ``i``.

    A ghost covers every element of ``L_{i-1}`` and is covered by every
    element of ``L_{i+1}``; at an end level the missing side is simply absent.
    Ghost indices follow the original ones.
    """
    _check_level(P, i)
    if count < 1:
        raise ValueError("ghost count must be at least 1")
    r = P.rank_sizes[i]
    ghosts = mask_of(range(r, r + count))
    up = [list(level) for level in P.up]
    if i > 0:
        up[i - 1] = [m | ghosts for m in up[i - 1]]
    if i < P.rank:
        full = (1 << P.rank_sizes[i + 1]) - 1
        up[i] = up[i] + [full] * count
    sizes = list(P.rank_sizes)
    sizes[i] += count
    trace = TransformTrace(GHOST, i, tuple(ElementId(i, g) for g in range(r, r + count)), source=P)
    return GradedPoset.from_masks(sizes, up), trace


def clone_level(P: GradedPoset, i: int, k: int) -> tuple[GradedPoset, TransformTrace]:
    """Replace ``L_i`` by ``k`` comparability-identical copies of each element.

    Copy ``j`` (0-based) of element ``y`` gets index ``j * r_i + y``.
    """
    _check_level(P, i)
    if k < 1:
        raise ValueError("clone factor must be at least 1")
    r = P.rank_sizes[i]
    up = [list(level) for level in P.up]
    if i > 0:
        up[i - 1] = [_repeat(m, r, k) for m in up[i - 1]]
    if i < P.rank:
        up[i] = up[i] * k
    sizes = list(P.rank_sizes)
    sizes[i] = k * r
    clone_map = {y: tuple(j * r + y for j in range(k)) for y in range(r)}
    return GradedPoset.from_masks(sizes, up), TransformTrace(CLONE, i, clone_map=clone_map, source=P)


def _repeat(mask: int, width: int, k: int) -> int:
    out = 0
    for j in range(k):
        out |= mask << (j * width)
    return out


def bunch_level(P: GradedPoset, i: int, blocks) -> tuple[GradedPoset, TransformTrace]:
    """Replace ``L_i`` by the blocks of an equal-size partition.

    Block ``j`` is above ``x`` when some member is, and below ``z`` when some
    member is.

    Raises:
        NotAPartition: ``blocks`` do not partition ``L_i``.
        UnequalBlocks: blocks differ in size.
    """
    _check_level(P, i)
    blocks = [tuple(sorted(b)) for b in blocks]
    r = P.rank_sizes[i]
    seen = []
    for b in blocks:
        seen.extend(b)
    if sorted(seen) != list(range(r)):
        raise NotAPartition(f"blocks do not partition level {i} of size {r}")
    if any(not b for b in blocks) or len({len(b) for b in blocks}) != 1:
        raise UnequalBlocks(f"block sizes {[len(b) for b in blocks]} are not all equal")
    up = [list(level) for level in P.up]
    if i > 0:
        new_rows = []
        for m in up[i - 1]:
            row = 0
            for j, b in enumerate(blocks):
                if m & mask_of(b):
                    row |= 1 << j
            new_rows.append(row)
        up[i - 1] = new_rows
    if i < P.rank:
        old = up[i]
        up[i] = []
        for b in blocks:
            row = 0
            for y in b:
                row |= old[y]
            up[i].append(row)
    sizes = list(P.rank_sizes)
    sizes[i] = len(blocks)
    bunch = {j: frozenset(b) for j, b in enumerate(blocks)}
    return GradedPoset.from_masks(sizes, up), TransformTrace(BUNCH, i, bunch_blocks=bunch, source=P)


def strip_ghosts(D: ChainDecomposition, trace: TransformTrace) -> ChainDecomposition:
    """Delete the ghosts of ``trace`` from every chain of ``D``.

    Chains consisting only of ghosts disappear. A ghost strictly inside a
    chain is dropped only when its two neighbors are comparable in the
    source poset.

    Raises:
        GhostInterior: an interior ghost's neighbors are incomparable in the
            source poset, so dropping it would not leave a chain.
    """
    if trace.kind != GHOST:
        raise ValueError(f"expected a ghost trace, got {trace.kind!r}")
    ghosts = set(trace.ghost_ids)
    src = trace.source
    chains = []
    for chain in D.chains:
        kept = [e for e in chain if e not in ghosts]
        if not kept:
            continue
        if len(kept) != len(chain) and src is not None:
            for lo, hi in zip(kept, kept[1:]):
                if not src.less(lo, hi):
                    raise GhostInterior(f"removing a ghost between {lo} and {hi} leaves incomparable neighbors")
        chains.append(tuple(kept))
    return ChainDecomposition(tuple(chains), D.method, D.trace).canonical()

