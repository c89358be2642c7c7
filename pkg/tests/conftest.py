import pytest
from hypothesis import strategies as st

from dgpoly import Digraph

# Worked examples reused across test modules.
C3 = Digraph(3, {(0, 1), (1, 2), (2, 0)})
F = Digraph(3, {(0, 2), (1, 2)})
N4 = Digraph(4, {(0, 2), (1, 2), (1, 3)})
P2 = Digraph(2, {(0, 1)})
L1 = Digraph(1, {(0, 0)})
I1 = Digraph(1, set())
NULL = Digraph(0, set())
TWO_CYCLE = Digraph(2, {(0, 1), (1, 0)})
C2_C3 = Digraph(5, {(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)})
# Rectangular at the top level but refused one factoring step down.
REFUSED_DEEP = Digraph(3, {(0, 0), (1, 1), (1, 2), (2, 0)})


@pytest.fixture
def c3():
    return C3


@pytest.fixture
def fork():
    return F


@pytest.fixture
def n4():
    return N4


@pytest.fixture
def p2():
    return P2


@st.composite
def digraphs(draw, max_n: int = 5):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Digraph(n, frozenset(edges))
