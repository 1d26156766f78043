"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from nestkit.poset import GradedPoset


@st.composite
def graded_posets(draw, max_levels=4, max_size=4, max_rank=None):
    """Random graded posets; missing covers are patched in to keep gradedness."""
    n_levels = draw(st.integers(1, max_levels))
    sizes = [draw(st.integers(1, max_size)) for _ in range(n_levels)]
    up = []
    for i in range(n_levels - 1):
        full = (1 << sizes[i + 1]) - 1
        rows = [draw(st.integers(0, full)) for _ in range(sizes[i])]
        rows = [r or 1 << draw(st.integers(0, sizes[i + 1] - 1)) for r in rows]
        covered = 0
        for r in rows:
            covered |= r
        for b in range(sizes[i + 1]):
            if not covered >> b & 1:
                rows[draw(st.integers(0, sizes[i] - 1))] |= 1 << b
        up.append(rows)
    return GradedPoset.from_masks(sizes, up)


@st.composite
def nm_posets(draw, max_levels=4, max_size=5):
    """NM posets from the pruning generator with drawn sizes, seed and density."""
    from nestkit.generators import GenSpec, random_nm_poset

    n_levels = draw(st.integers(1, max_levels))
    sizes = tuple(draw(st.integers(1, max_size)) for _ in range(n_levels))
    seed = draw(st.integers(0, 2**32))
    density = draw(st.sampled_from([0.2, 0.4, 0.6, 0.8, 1.0]))
    return random_nm_poset(GenSpec(sizes, seed, density))
