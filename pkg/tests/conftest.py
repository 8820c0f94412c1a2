import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from spslat.constructions import B2, covering_squares, fixture, fork_insert, generate_patch_lattices  # noqa: E402


@lru_cache(maxsize=None)
def generated(depth):
    return tuple(generate_patch_lattices(depth, with_meta=True))


@pytest.fixture(scope="session")
def gen3():
    return [g.lattice for g in generated(3)]


@pytest.fixture(scope="session")
def gen2():
    return [g.lattice for g in generated(2)]


@pytest.fixture
def S7():
    return fixture("S7")


@pytest.fixture
def B2L():
    return fixture("B2")


@st.composite
def fork_lattices(draw, max_forks=4):
    """A lattice reached from B2 by a random sequence of fork insertions."""
    L = B2()
    for _ in range(draw(st.integers(0, max_forks))):
        squares = covering_squares(L)
        L = fork_insert(L, squares[draw(st.integers(0, len(squares) - 1))], validate=False)
    return L


def s7_with_fork(square_labels):
    """S7 with one more fork at the square given by element labels (o, a_l, a_r, t)."""
    from spslat.constructions import CoveringSquare

    L = fixture("S7")
    return fork_insert(L, CoveringSquare(*(L.index(s) for s in square_labels)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
