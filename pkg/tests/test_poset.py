import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestkit import build_poset, chain_poset, complete_poset, dual, induced_levels, random_nm_poset, remove_element, shadow
from nestkit.errors import IndexOutOfRange, NotGraded, WouldBreakGradedness
from nestkit.generators import GenSpec
from nestkit.nm import nm_check

from .strategies import graded_posets


def test_chain_poset():
    P = build_poset([1, 1, 1, 1], [(0, 0, 0), (1, 0, 0), (2, 0, 0)])
    assert P == chain_poset(3)
    assert P.rank == 3 and P.size == 4
    assert P.less((0, 0), (3, 0))


def test_accepts_when_every_element_is_covered():
    P = build_poset([2, 3], [(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0)])
    assert P.down(1)[1] == 0b01


def test_rejects_missing_covers():
    with pytest.raises(NotGraded) as info:
        build_poset([2, 2], [(0, 0, 0)])
    assert info.value.element == (0, 1)


@pytest.mark.parametrize("triple", [(1, 0, 0), (0, 2, 0), (0, 0, 5), (-1, 0, 0)])
def test_rejects_bad_indices(triple):
    with pytest.raises(IndexOutOfRange):
        build_poset([2, 2], [(0, 0, 0), (0, 1, 1), triple])


def test_shadow_examples(failing_2x3):
    assert shadow(failing_2x3, 0, [], 1) == frozenset()
    assert shadow(failing_2x3, 0, [1], 1) == {0}
    assert shadow(failing_2x3, 1, [0], 0) == {0, 1}
    K = complete_poset([2, 3, 4])
    assert shadow(K, 0, [1], 2) == {0, 1, 2, 3}
    with pytest.raises(IndexOutOfRange):
        shadow(failing_2x3, 0, [2], 1)


def test_dual_examples():
    assert dual(chain_poset(3)) == chain_poset(3)
    assert dual(complete_poset([2, 3, 5])).rank_sizes == (5, 3, 2)


def test_remove_element_examples():
    Q, reindex = remove_element(complete_poset([2, 3, 2]), (1, 2))
    assert Q == complete_poset([2, 2, 2])
    assert reindex == {0: 0, 1: 1}
    with pytest.raises(WouldBreakGradedness):
        remove_element(chain_poset(3), (1, 0))


def test_remove_element_reindexes_neighbors(zigzag_2x3):
    Q, reindex = remove_element(zigzag_2x3, (1, 0))
    assert Q.rank_sizes == (2, 2)
    assert reindex == {1: 0, 2: 1}
    assert sorted(Q.covers()) == [(0, 0, 0), (0, 1, 0), (0, 1, 1)]


def test_remove_from_generated_instance():
    P = random_nm_poset(GenSpec((2, 3, 7, 2), seed=3, target_density=0.5))
    for x in range(7):
        Q, _ = remove_element(P, (2, x))
        assert Q.rank_sizes == (2, 3, 6, 2)
        assert nm_check(Q).holds


def test_induced_levels():
    P = random_nm_poset(GenSpec((2, 3, 7, 2), seed=1))
    assert induced_levels(P, 0, 3) == P
    assert induced_levels(P, 1, 3).rank_sizes == (3, 7, 2)
    assert induced_levels(chain_poset(3), 1, 3) == chain_poset(2)
    with pytest.raises(IndexOutOfRange):
        induced_levels(P, 2, 4)


@given(graded_posets())
def test_every_element_has_covers(P):
    for i in range(P.rank):
        assert all(P.up[i])
        assert all(P.down(i + 1))


@given(graded_posets(), st.data())
def test_shadow_monotone(P, data):
    if P.rank == 0:
        return
    i = data.draw(st.integers(0, P.rank))
    j = data.draw(st.integers(0, P.rank).filter(lambda v: v != i))
    T = data.draw(st.sets(st.integers(0, P.rank_sizes[i] - 1)))
    S = data.draw(st.sets(st.sampled_from(sorted(T)))) if T else set()
    assert shadow(P, i, S, j) <= shadow(P, i, T, j)


@given(graded_posets(max_levels=4), st.data())
def test_shadow_factors_through_middle_level(P, data):
    if P.rank < 2:
        return
    i, j, k = sorted(data.draw(st.lists(st.integers(0, P.rank), min_size=3, max_size=3, unique=True)))
    S = data.draw(st.sets(st.integers(0, P.rank_sizes[i] - 1)))
    assert shadow(P, i, S, k) == shadow(P, j, shadow(P, i, S, j), k)
    assert shadow(P, k, S & set(range(P.rank_sizes[k])), i) == shadow(
        P, j, shadow(P, k, S & set(range(P.rank_sizes[k])), j), i
    )


@given(graded_posets(), st.data())
@settings(max_examples=50)
def test_dual_transposes_shadows(P, data):
    assert dual(dual(P)) == P
    if P.rank == 0:
        return
    n = P.rank
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n).filter(lambda v: v != i))
    S = data.draw(st.sets(st.integers(0, P.rank_sizes[i] - 1)))
    assert shadow(dual(P), n - i, S, n - j) == shadow(P, i, S, j)
