"""Graded posets with level-indexed elements.

Elements are identified positionally as ``(level, index)``. Cover relations
only join consecutive levels and are stored as bitmasks: ``up[i][a]`` has bit
``b`` set when ``(i, a)`` is covered by ``(i + 1, b)``. Comparability across
non-adjacent levels is obtained by composing these masks level by level.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import IndexOutOfRange, NotGraded, WouldBreakGradedness


class ElementId(NamedTuple):
    level: int
    index: int

    def __repr__(self):
        return f"({self.level},{self.index})"


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class GradedPoset:
    """An immutable graded poset.

    Use :func:`build_poset` (or :meth:`from_masks`) to construct one; both
    validate gradedness.
    """

    __slots__ = ("rank_sizes", "up", "labels", "_reach", "_down", "_hash")

    def __init__(self, rank_sizes, up, labels=None):
        self.rank_sizes: tuple[int, ...] = tuple(rank_sizes)
        self.up: tuple[tuple[int, ...], ...] = tuple(tuple(level) for level in up)
        self.labels = None if labels is None else tuple(tuple(lv) for lv in labels)
        self._reach: dict = {}
        self._down = None
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_masks(cls, rank_sizes, up, labels=None) -> "GradedPoset":
        poset = cls(rank_sizes, up, labels)
        poset._validate()
        return poset

    def _validate(self):
        sizes = self.rank_sizes
        if not sizes or any(r < 1 for r in sizes):
            raise ValueError(f"rank sizes must be positive, got {list(sizes)}")
        if len(self.up) != len(sizes) - 1:
            raise ValueError("need one cover table per consecutive level pair")
        for i, level in enumerate(self.up):
            if len(level) != sizes[i]:
                raise IndexOutOfRange(f"cover table {i} has {len(level)} rows, expected {sizes[i]}")
            full = (1 << sizes[i + 1]) - 1
            for a, m in enumerate(level):
                if m & ~full:
                    raise IndexOutOfRange(f"cover from ({i},{a}) points past level {i + 1}")
                if not m:
                    raise NotGraded(f"element ({i},{a}) has no up-cover", ElementId(i, a))
            covered = 0
            for m in level:
                covered |= m
            if covered != full:
                b = next(bits(full & ~covered))
                raise NotGraded(f"element ({i + 1},{b}) has no down-cover", ElementId(i + 1, b))
        if self.labels is not None:
            if len(self.labels) != len(sizes) or any(
                len(lv) != r for lv, r in zip(self.labels, sizes)
            ):
                raise ValueError("labels must match rank sizes")

    # -- basic shape --------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.rank_sizes) - 1

    @property
    def size(self) -> int:
        return sum(self.rank_sizes)

    def elements(self) -> Iterator[ElementId]:
        for i, r in enumerate(self.rank_sizes):
            for a in range(r):
                yield ElementId(i, a)

    def covers(self) -> list[tuple[int, int, int]]:
        """All cover triples ``(i, a, b)`` in sorted order."""
        return [(i, a, b) for i, level in enumerate(self.up) for a, m in enumerate(level) for b in bits(m)]

    def down(self, i: int) -> tuple[int, ...]:
        """Down-cover masks of level ``i`` (over level ``i - 1``)."""
        if self._down is None:
            tables = [()]
            for lo, level in enumerate(self.up):
                rows = [0] * self.rank_sizes[lo + 1]
                for a, m in enumerate(level):
                    for b in bits(m):
                        rows[b] |= 1 << a
                tables.append(tuple(rows))
            self._down = tuple(tables)
        return self._down[i]

    def _check_level(self, i):
        if not 0 <= i <= self.rank:
            raise IndexOutOfRange(f"level {i} outside 0..{self.rank}")

    def _check_element(self, x):
        self._check_level(x[0])
        if not 0 <= x[1] < self.rank_sizes[x[0]]:
            raise IndexOutOfRange(f"element {tuple(x)} outside level of size {self.rank_sizes[x[0]]}")

    # -- comparability ----------------------------------------------------

    def reach(self, i: int, j: int) -> tuple[int, ...]:
        """Masks over ``L_j`` of the elements comparable to each element of ``L_i``."""
        key = (i, j)
        cached = self._reach.get(key)
        if cached is not None:
            return cached
        if i == j:
            result = tuple(1 << a for a in range(self.rank_sizes[i]))
        elif j == i + 1:
            result = self.up[i]
        elif j == i - 1:
            result = self.down(i)
        elif i < j:
            above = self.reach(i + 1, j)
            result = tuple(_union(above, m) for m in self.up[i])
        else:
            below = self.reach(i - 1, j)
            result = tuple(_union(below, m) for m in self.down(i))
        self._reach[key] = result
        return result

    def less(self, x, y) -> bool:
        """Strict order ``x < y``."""
        if x[0] >= y[0]:
            return False
        return bool(self.reach(x[0], y[0])[x[1]] >> y[1] & 1)

    def comparable(self, x, y) -> bool:
        return self.less(x, y) or self.less(y, x)

    def shadow_mask(self, i: int, s_mask: int, j: int) -> int:
        return _union(self.reach(i, j), s_mask)

    def shadow(self, i: int, S: Iterable[int], j: int) -> frozenset[int]:
        """Indices of ``L_j`` comparable to some element of ``S ⊆ L_i``."""
        self._check_level(i)
        self._check_level(j)
        S = list(S)
        for a in S:
            self._check_element((i, a))
        return frozenset(bits(self.shadow_mask(i, mask_of(S), j)))

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return self.rank_sizes == other.rank_sizes and self.up == other.up

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank_sizes, self.up))
        return self._hash

    def __repr__(self):
        return f"GradedPoset(ranks={list(self.rank_sizes)}, covers={len(self.covers())})"

    def __getstate__(self):
        return (self.rank_sizes, self.up, self.labels)

    def __setstate__(self, state):
        GradedPoset.__init__(self, *state)


def _union(masks: Sequence[int], selector: int) -> int:
    out = 0
    while selector:
        low = selector & -selector
        out |= masks[low.bit_length() - 1]
        selector ^= low
    return out


# -- construction helpers ---------------------------------------------------


def build_poset(rank_sizes, covers, labels=None) -> GradedPoset:
    """Build and validate a graded poset from cover triples ``(i, a, b)``.

    Raises:
        IndexOutOfRange: a triple names a missing level or element.
        NotGraded: some element has no up-cover (below the top level) or no
            down-cover (above level 0).
    """
    sizes = [int(r) for r in rank_sizes]
    if not sizes or any(r < 1 for r in sizes):
        raise ValueError(f"rank sizes must be nonempty and positive, got {sizes}")
    up = [[0] * sizes[i] for i in range(len(sizes) - 1)]
    for i, a, b in covers:
        if not 0 <= i < len(sizes) - 1:
            raise IndexOutOfRange(f"cover level {i} outside 0..{len(sizes) - 2}")
        if not (0 <= a < sizes[i] and 0 <= b < sizes[i + 1]):
            raise IndexOutOfRange(f"cover ({i},{a},{b}) out of range for sizes {sizes}")
        up[i][a] |= 1 << b
    return GradedPoset.from_masks(sizes, up, labels)


def chain_poset(length: int) -> GradedPoset:
    """The totally ordered poset with ``length + 1`` elements."""
    return GradedPoset.from_masks([1] * (length + 1), [[1]] * length)


def shadow(P: GradedPoset, i: int, S: Iterable[int], j: int) -> frozenset[int]:
    return P.shadow(i, S, j)


def dual(P: GradedPoset) -> GradedPoset:
    """Reverse the order: level ``i`` becomes level ``n - i``."""
    n = P.rank
    up = [P.down(n - i) for i in range(n)]
    labels = None if P.labels is None else P.labels[::-1]
    return GradedPoset(P.rank_sizes[::-1], up, labels)


def remove_element(P: GradedPoset, x) -> tuple[GradedPoset, dict[int, int]]:
    """Delete ``x`` and compact the indices of its level.

    Returns the new poset and the map from surviving old indices at
    ``x``'s level to their new indices.

    Raises:
        WouldBreakGradedness: some neighbor of ``x`` has ``x`` as its only
            cover on that side, or ``x`` is alone on its level.
    """
    P._check_element(x)
    lvl, idx = x
    if P.rank_sizes[lvl] < 2:
        raise WouldBreakGradedness(f"{tuple(x)} is the only element of level {lvl}")
    bit = 1 << idx
    if lvl > 0:
        for a, m in enumerate(P.up[lvl - 1]):
            if m == bit:
                raise WouldBreakGradedness(f"({lvl - 1},{a}) is covered only by {tuple(x)}")
    if lvl < P.rank:
        for b, m in enumerate(P.down(lvl + 1)):
            if m == bit:
                raise WouldBreakGradedness(f"({lvl + 1},{b}) covers only {tuple(x)}")

    def squeeze(m):
        low = m & (bit - 1)
        return low | ((m >> (idx + 1)) << idx)

    up = [list(level) for level in P.up]
    if lvl > 0:
        up[lvl - 1] = [squeeze(m) for m in up[lvl - 1]]
    if lvl < P.rank:
        del up[lvl][idx]
    sizes = list(P.rank_sizes)
    sizes[lvl] -= 1
    labels = None
    if P.labels is not None:
        labels = [list(lv) for lv in P.labels]
        del labels[lvl][idx]
    reindex = {a: (a if a < idx else a - 1) for a in range(P.rank_sizes[lvl]) if a != idx}
    return GradedPoset.from_masks(sizes, up, labels), reindex


def induced_levels(P: GradedPoset, lo: int, hi: int) -> GradedPoset:
    """The subposet on levels ``lo..hi``, re-leveled to start at 0."""
    if not 0 <= lo <= hi <= P.rank:
        raise IndexOutOfRange(f"level range {lo}..{hi} outside 0..{P.rank}")
    labels = None if P.labels is None else P.labels[lo : hi + 1]
    return GradedPoset(P.rank_sizes[lo : hi + 1], P.up[lo:hi], labels)


def complete_poset(rank_sizes) -> GradedPoset:
    """Every consecutive pair of levels fully connected."""
    sizes = [int(r) for r in rank_sizes]
    up = [[(1 << sizes[i + 1]) - 1] * sizes[i] for i in range(len(sizes) - 1)]
    return GradedPoset.from_masks(sizes, up)


@dataclass(frozen=True)
class ChainDecomposition:
    """A list of chains, each a tuple of :class:`ElementId` bottom to top.

    ``method`` and ``trace`` record provenance for serialization only.
    """

    chains: tuple[tuple[ElementId, ...], ...]
    method: str = ""
    trace: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "chains",
            tuple(tuple(ElementId(*e) for e in chain) for chain in self.chains),
        )

    def __len__(self):
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)

    def canonical(self) -> "ChainDecomposition":
        """Same chains, ordered longest first and then by elements."""
        ordered = sorted(self.chains, key=lambda c: (-len(c), c))
        return ChainDecomposition(tuple(ordered), self.method, self.trace)

    def rank_sets(self) -> list[frozenset[int]]:
        return [frozenset(e.level for e in chain) for chain in self.chains]

    def with_method(self, method: str, trace=None) -> "ChainDecomposition":
        return ChainDecomposition(self.chains, method, self.trace if trace is None else tuple(trace))


def decomposition(chains, method: str = "", trace=()) -> ChainDecomposition:
    """Build a canonical-order decomposition from iterables of ``(level, index)``."""
    return ChainDecomposition(tuple(tuple(ElementId(*e) for e in c) for c in chains), method, tuple(trace)).canonical()
