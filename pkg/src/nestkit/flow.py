"""Exact integer max-flow and bipartite matching.

Both are small, dependency-free routines sized for posets with a few dozen
elements per level. All capacities are Python ints.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence

from .poset import bits


class FlowNetwork:
    """Directed network solved with shortest augmenting paths (Edmonds-Karp)."""

    def __init__(self, n_nodes: int = 0):
        self.n = n_nodes
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]
        # edge e and its reverse e ^ 1 live side by side
        self.head: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, cap: int) -> int:
        e = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.orig += [cap, 0]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def flow(self, e: int) -> int:
        return self.orig[e] - self.cap[e]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        head, cap, adj = self.head, self.cap, self.adj
        while True:
            parent = [-1] * self.n
            parent[s] = -2
            queue = deque([s])
            while queue and parent[t] == -1:
                u = queue.popleft()
                for e in adj[u]:
                    v = head[e]
                    if cap[e] > 0 and parent[v] == -1:
                        parent[v] = e
                        queue.append(v)
            if parent[t] == -1:
                return total
            push = None
            v = t
            while v != s:
                e = parent[v]
                push = cap[e] if push is None else min(push, cap[e])
                v = head[e ^ 1]
            v = t
            while v != s:
                e = parent[v]
                cap[e] -= push
                cap[e ^ 1] += push
                v = head[e ^ 1]
            total += push

    def residual_reachable(self, s: int) -> set[int]:
        """Nodes reachable from ``s`` in the residual graph (the min-cut source side)."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.head[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def feasible_flow(n_nodes: int, edges: Sequence[tuple[int, int, int, int]], s: int, t: int):
    """Find an s-t flow honoring lower and upper bounds on every edge.

    ``edges`` holds ``(u, v, low, high)`` tuples. Returns the flow value on
    each edge (same order) or ``None`` when the bounds are infeasible.
    """
    net = FlowNetwork(n_nodes + 2)
    ss, tt = n_nodes, n_nodes + 1
    excess = [0] * n_nodes
    ids = []
    for u, v, low, high in edges:
        ids.append(net.add_edge(u, v, high - low))
        excess[v] += low
        excess[u] -= low
    big = sum(high for _, _, _, high in edges) + 1
    net.add_edge(t, s, big)
    need = 0
    for node, ex in enumerate(excess):
        if ex > 0:
            net.add_edge(ss, node, ex)
            need += ex
        elif ex < 0:
            net.add_edge(node, tt, -ex)
    if net.max_flow(ss, tt) != need:
        return None
    return [low + net.flow(e) for (_, _, low, _), e in zip(edges, ids)]


def max_matching(adj: Sequence[int], n_right: int) -> list[int]:
    """Maximum bipartite matching by augmenting paths.

    ``adj[u]`` is a bitmask over right vertices. Returns ``match_left`` with
    the matched right vertex of each left vertex or -1. Left vertices are
    tried in index order and neighbors in increasing order, so the result is
    deterministic.
    """
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def augment(u, seen):
        for v in bits(adj[u] & ~seen[0]):
            seen[0] |= 1 << v
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(len(adj)):
        augment(u, [0])
    return match_left


def saturates(adj: Sequence[int]) -> bool:
    """Whether some matching covers every left vertex (Hall's condition)."""
    match_right: dict[int, int] = {}

    def augment(u, seen):
        m = adj[u] & ~seen[0]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            seen[0] |= low
            w = match_right.get(v, -1)
            if w == -1 or augment(w, seen):
                match_right[v] = u
                return True
        return False

    return all(augment(u, [0]) for u in range(len(adj)))
