"""Nestings of posets of rank 1 and 2."""
from __future__ import annotations

from ..errors import ConditionUnmet, NoFlow, NoMatching
from ..flow import FlowNetwork, feasible_flow, max_matching
from ..poset import ChainDecomposition, ElementId, GradedPoset, bits, decomposition, induced_levels
from ..transforms import add_ghosts, strip_ghosts


def _require_rank(P: GradedPoset, n: int):
    if P.rank != n:
        raise ConditionUnmet(f"expected a poset of rank {n}, got rank {P.rank}")


def rank1_nesting(P: GradedPoset) -> ChainDecomposition:
    """Match the smaller level into the larger one (Hall); leftovers are singletons.

    Raises:
        NoMatching: no matching saturates the smaller level, so ``P`` is not NM.
    """
    _require_rank(P, 1)
    r0, r1 = P.rank_sizes
    if r0 <= r1:
        match = max_matching(P.up[0], r1)
        small, big = 0, 1
    else:
        match = max_matching(P.down(1), r0)
        small, big = 1, 0
    if -1 in match:
        u = match.index(-1)
        raise NoMatching(f"element ({small},{u}) cannot be matched; the poset is not NM")
    used = set(match)
    chains = [sorted([(small, u), (big, v)]) for u, v in enumerate(match)]
    chains += [[(big, v)] for v in range(P.rank_sizes[big]) if v not in used]
    return decomposition(chains, "rank1")


def lemma_avoid_partition(P: GradedPoset, x) -> ChainDecomposition:
    """Perfectly match ``L_0`` with ``L_1 \\ {x}`` and keep ``{x}`` apart.

    Requires rank sizes ``(r, r + 1)`` and ``x`` on level 1.

    Raises:
        NoMatching: the matching does not exist (never on NM input).
    """
    _require_rank(P, 1)
    r0, r1 = P.rank_sizes
    x = ElementId(*x)
    if r1 != r0 + 1 or x.level != 1 or not 0 <= x.index < r1:
        raise ConditionUnmet(f"need rank sizes (r, r+1) and x on level 1; got {P.rank_sizes}, {x}")
    avoid = ~(1 << x.index)
    adj = [m & avoid for m in P.up[0]]
    match = max_matching(adj, r1)
    if -1 in match:
        raise NoMatching(f"({0},{match.index(-1)}) unmatched while avoiding {x}; the poset is not NM")
    chains = [[(0, u), (1, v)] for u, v in enumerate(match)] + [[tuple(x)]]
    return decomposition(chains, "lemma-avoid")


def symmetric2_chains(P: GradedPoset) -> ChainDecomposition:
    """Symmetric chain decomposition of a rank-2 poset with ``r_0 = r_2 <= r_1``.

    The full chains are an integral flow of value ``r_0`` with unit capacity
    through every middle element.

    Raises:
        NoFlow: fewer than ``r_0`` disjoint full chains exist (``P`` is not NM).
    """
    _require_rank(P, 2)
    r0, r1, r2 = P.rank_sizes
    if r0 != r2 or r0 > r1:
        raise ConditionUnmet(f"need r_0 = r_2 <= r_1, got {P.rank_sizes}")
    # nodes: s, t, x's, y_in's, y_out's, z's
    s, t = 0, 1
    X = 2
    Yi = X + r0
    Yo = Yi + r1
    Z = Yo + r1
    net = FlowNetwork(Z + r2)
    for a in range(r0):
        net.add_edge(s, X + a, 1)
        for b in bits(P.up[0][a]):
            net.add_edge(X + a, Yi + b, 1)
    mid = []
    for b in range(r1):
        mid.append(net.add_edge(Yi + b, Yo + b, 1))
        for c in bits(P.up[1][b]):
            net.add_edge(Yo + b, Z + c, 1)
    for c in range(r2):
        net.add_edge(Z + c, t, 1)
    value = net.max_flow(s, t)
    if value != r0:
        raise NoFlow(f"only {value} of {r0} disjoint full chains exist; the poset is not NM")
    chains = [_trace_path(net, X + a, [(0, a)], Yi, Yo, Z, r1) for a in range(r0)]
    used = {c[1][1] for c in chains}
    chains += [[(1, b)] for b in range(r1) if b not in used]
    return decomposition(chains, "symmetric2")


def _trace_path(net, start, chain, Yi, Yo, Z, r1):
    node = start
    while True:
        nxt = None
        for e in net.adj[node]:
            if e % 2 == 0 and net.flow(e) > 0:
                nxt = net.head[e]
                break
        if nxt is None or nxt == 1:
            return chain
        if Yi <= nxt < Yo:
            chain.append((1, nxt - Yi))
        elif nxt >= Z:
            chain.append((2, nxt - Z))
        node = nxt


def _concatenate(lower: ChainDecomposition, upper: ChainDecomposition) -> list[list[tuple[int, int]]]:
    """Glue chains of levels 0-1 and 1-2 through their shared middle element."""
    above = {}
    chains = []
    for chain in upper.chains:
        mids = [e for e in chain if e.level == 0]
        tops = [(2, e.index) for e in chain if e.level == 1]
        if mids:
            above[mids[0].index] = tops
        else:
            chains.append(tops)
    for chain in lower.chains:
        bottom = [(0, e.index) for e in chain if e.level == 0]
        mid = [e.index for e in chain if e.level == 1]
        if mid:
            chains.append(bottom + [(1, mid[0])] + above.pop(mid[0], []))
        else:
            chains.append(bottom)
    for y, tops in sorted(above.items()):
        chains.append([(1, y)] + tops)
    return chains


def rank2_nesting(P: GradedPoset) -> ChainDecomposition:
    """Nesting of any NM poset of rank 2, by ghosting one level.

    * middle level largest: ghost the smaller end level up to the other end
      and take a symmetric chain decomposition;
    * middle level smallest: ghost the middle up to the smaller end; the
      resulting length-2 chains come from one lower-bounded flow in which a
      ghost may only join a comparable pair ``x < z`` of the original poset;
    * otherwise: ghost the smaller end up to the middle and concatenate two
      rank-1 matchings through the middle level.

    Ghosts are stripped before returning.
    """
    _require_rank(P, 2)
    r0, r1, r2 = P.rank_sizes
    if r1 >= max(r0, r2):
        if r0 == r2:
            return symmetric2_chains(P).with_method("rank2")
        end = 0 if r0 < r2 else 2
        G, trace = add_ghosts(P, end, abs(r2 - r0))
        return strip_ghosts(symmetric2_chains(G), trace).with_method("rank2")
    if r1 < min(r0, r2):
        return _rank2_narrow_middle(P)
    if r0 < r1 or r2 < r1:
        end = 0 if r0 < r1 else 2
        G, trace = add_ghosts(P, end, r1 - P.rank_sizes[end])
    else:
        G, trace = P, None
    lower = rank1_nesting(induced_levels(G, 0, 1))
    upper = rank1_nesting(induced_levels(G, 1, 2))
    D = decomposition(_concatenate(lower, upper), "rank2")
    if trace is not None:
        D = strip_ghosts(D, trace)
    return D.with_method("rank2")


def _rank2_narrow_middle(P: GradedPoset) -> ChainDecomposition:
    r0, r1, r2 = P.rank_sizes
    m = min(r0, r2)
    G, trace = add_ghosts(P, 1, m - r1)
    ghosts = iter(trace.ghost_ids)
    # every middle element carries one unit; the smaller end is saturated
    s, t = 0, 1
    X, Y, Z = 2, 2 + r0, 2 + r0 + 2 * r1
    edges = []
    for a in range(r0):
        edges.append((s, X + a, 1 if r0 <= r2 else 0, 1))
    for b in range(r1):
        edges.append((Y + 2 * b, Y + 2 * b + 1, 1, 1))
    for a in range(r0):
        for b in bits(P.up[0][a]):
            edges.append((X + a, Y + 2 * b, 0, 1))
        for c in bits(P.reach(0, 2)[a]):
            edges.append((X + a, Z + c, 0, 1))
    for b in range(r1):
        for c in bits(P.up[1][b]):
            edges.append((Y + 2 * b + 1, Z + c, 0, 1))
    for c in range(r2):
        edges.append((Z + c, t, 1 if r2 <= r0 else 0, 1))
    flow = feasible_flow(Z + r2, edges, s, t)
    if flow is None:
        raise NoFlow(f"no coordinated matching for rank sizes {P.rank_sizes}; the poset is not NM")
    out = {}
    for (u, v, _, _), f in zip(edges, flow):
        if f and u != s:
            out[u] = v
    chains = []
    used_z = set()
    for a in range(r0):
        node = out.get(X + a)
        if node is None:
            chains.append([(0, a)])
        elif node >= Z:
            chains.append([(0, a), tuple(next(ghosts)), (2, node - Z)])
            used_z.add(node - Z)
        else:
            b = (node - Y) // 2
            c = out[Y + 2 * b + 1] - Z
            chains.append([(0, a), (1, b), (2, c)])
            used_z.add(c)
    chains += [[(2, c)] for c in range(r2) if c not in used_z]
    D = decomposition(chains, "rank2")
    return strip_ghosts(D, trace)
