import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestkit import add_ghosts, bunch_level, chain_poset, clone_level, nm_check, strip_ghosts
from nestkit.errors import GhostInterior, NotAPartition, UnequalBlocks
from nestkit.poset import build_poset, decomposition
from nestkit.transforms import BUNCH, CLONE, GHOST

from .strategies import nm_posets


def test_ghost_on_132(poset_132):
    G, trace = add_ghosts(poset_132, 0, 1)
    assert G.rank_sizes == (2, 3, 2)
    assert nm_check(G).holds
    assert trace.kind == GHOST and trace.ghost_ids == ((0, 1),)
    # the ghost lies below every element of level 1
    assert G.up[0][1] == 0b111


def test_ghost_at_top_of_chain():
    G, trace = add_ghosts(chain_poset(2), 2, 2)
    assert G.rank_sizes == (1, 1, 3)
    assert G.up[1] == (0b111,)
    assert trace.to_json() == {"kind": "ghost", "level": 2, "ghost_ids": [[2, 1], [2, 2]]}


def test_clone_figure(figure_poset):
    C, trace = clone_level(figure_poset, 1, 2)
    assert C.rank_sizes == (6, 8)
    for y in range(4):
        for copy in trace.clone_map[y]:
            assert C.down(1)[copy] == figure_poset.down(1)[y]
            assert bin(C.down(1)[copy]).count("1") == 3
    assert trace.clone_map == {0: (0, 4), 1: (1, 5), 2: (2, 6), 3: (3, 7)}


def test_clone_identity(figure_poset):
    C, _ = clone_level(figure_poset, 1, 1)
    assert C == figure_poset


def test_bunch_figure(figure_poset):
    B, trace = bunch_level(figure_poset, 1, [[0, 1], [2, 3]])
    assert B.rank_sizes == (6, 2)
    assert B.down(1) == (0b001111, 0b111100)
    assert trace.bunch_blocks == {0: frozenset({0, 1}), 1: frozenset({2, 3})}
    assert trace.to_json()["kind"] == BUNCH


def test_bunch_identity(figure_poset):
    B, _ = bunch_level(figure_poset, 1, [[y] for y in range(4)])
    assert B == figure_poset


def test_bunch_errors(figure_poset):
    with pytest.raises(UnequalBlocks):
        bunch_level(figure_poset, 1, [[0], [1, 2, 3]])
    with pytest.raises(NotAPartition):
        bunch_level(figure_poset, 1, [[0, 1], [1, 2]])
    with pytest.raises(NotAPartition):
        bunch_level(figure_poset, 1, [[0, 1]])


def test_strip_ghost_at_chain_end(poset_132):
    G, trace = add_ghosts(poset_132, 0, 1)
    D = decomposition([[(0, 1), (1, 1), (2, 1)], [(0, 0), (1, 0), (2, 0)], [(1, 2)]])
    stripped = strip_ghosts(D, trace)
    assert sorted(frozenset(e.level for e in c) for c in stripped.chains) == sorted(
        [frozenset({1, 2}), frozenset({0, 1, 2}), frozenset({1})]
    )


def test_strip_interior_ghost_between_comparable():
    P = build_poset([1, 1, 1], [(0, 0, 0), (1, 0, 0)])
    G, trace = add_ghosts(P, 1, 1)
    D = decomposition([[(0, 0), (1, 1), (2, 0)], [(1, 0)]])
    assert strip_ghosts(D, trace).chains == (((0, 0), (2, 0)), ((1, 0),))


def test_strip_interior_ghost_between_incomparable():
    # (3,2,4): x0<y0, x1<y1, x2<y0,y1; y0<z0,z1; y1<z2,z3. x0 and z2 are incomparable.
    P = build_poset([3, 2, 4], [(0, 0, 0), (0, 1, 1), (0, 2, 0), (0, 2, 1), (1, 0, 0), (1, 0, 1), (1, 1, 2), (1, 1, 3)])
    G, trace = add_ghosts(P, 1, 1)
    D = decomposition([[(0, 0), (1, 2), (2, 2)], [(0, 1), (1, 1), (2, 3)], [(0, 2), (1, 0), (2, 0)], [(2, 1)]])
    with pytest.raises(GhostInterior):
        strip_ghosts(D, trace)


def test_strip_without_ghosts_is_identity(poset_132):
    _, trace = add_ghosts(poset_132, 0, 1)
    D = decomposition([[(0, 0), (1, 0), (2, 0)], [(1, 1), (2, 1)], [(1, 2)]])
    assert strip_ghosts(D, trace).chains == D.chains


@settings(max_examples=100, deadline=None)
@given(nm_posets(), st.data())
def test_ghosts_preserve_nm(P, data):
    i = data.draw(st.integers(0, P.rank))
    count = data.draw(st.integers(1, 3))
    G, _ = add_ghosts(P, i, count)
    assert G.rank_sizes[i] == P.rank_sizes[i] + count
    assert nm_check(G).holds


@settings(max_examples=100, deadline=None)
@given(nm_posets(), st.data())
def test_clones_preserve_nm(P, data):
    i = data.draw(st.integers(0, P.rank))
    k = data.draw(st.sampled_from([2, 3]))
    C, trace = clone_level(P, i, k)
    assert C.rank_sizes[i] == k * P.rank_sizes[i]
    assert trace.kind == CLONE
    assert nm_check(C).holds
    # bunching every clone group restores the original
    back, _ = bunch_level(C, i, [trace.clone_map[y] for y in range(P.rank_sizes[i])])
    assert back == P


@settings(max_examples=100, deadline=None)
@given(nm_posets(max_size=6), st.data())
def test_bunches_preserve_nm(P, data):
    i = data.draw(st.integers(0, P.rank))
    r = P.rank_sizes[i]
    m = data.draw(st.sampled_from([d for d in range(1, r + 1) if r % d == 0]))
    order = data.draw(st.permutations(range(r)))
    size = r // m
    blocks = [order[j * size : (j + 1) * size] for j in range(m)]
    B, _ = bunch_level(P, i, blocks)
    assert B.rank_sizes[i] == m
    assert nm_check(B).holds
