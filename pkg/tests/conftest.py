import pytest

from nestkit import build_poset

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def failing_2x3():
    """L0={a,b}, L1={c,d,e}; a<c, a<d, a<e, b<c. Not NM: S={b}."""
    return build_poset([2, 3], [(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0)])


@pytest.fixture
def zigzag_2x3():
    """a<c, a<d, b<d, b<e."""
    return build_poset([2, 3], [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 2)])


@pytest.fixture
def poset_132():
    """(1,3,2): a<b, a<c, a<d; b<e, c<e, c<f, d<f."""
    return build_poset([1, 3, 2], [(0, 0, 0), (0, 0, 1), (0, 0, 2), (1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 2, 1)])


@pytest.fixture
def figure_poset():
    """(6,4): y_t sits above x_t, x_{t+1}, x_{t+2}."""
    return build_poset([6, 4], [(0, t + d, t) for t in range(4) for d in range(3)])
