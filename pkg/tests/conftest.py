import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import strategies as st

from spinrank.multigraph import Multigraph
from spinrank.scalars import GaussianRational
from spinrank.spin import SpinMatrix

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rationals(max_num=20, max_den=6):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def gaussian_rationals(max_num=20, max_den=6):
    return st.builds(GaussianRational, rationals(max_num, max_den), rationals(max_num, max_den))


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=6):
    n = draw(st.integers(0, max_vertices))
    if n == 0:
        return Multigraph(0)
    edges = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 2)),
            max_size=max_edges,
        )
    )
    return Multigraph(n, edges)


def random_graph(rng, max_vertices=6, max_edges=7, loops=True):
    n = rng.randint(1, max_vertices)
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        edges.append((u, v, rng.randint(1, 2)))
    return Multigraph(n, edges)


def random_symmetric(rng, n, complex_entries=True):
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            re = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            im = Fraction(rng.randint(-2, 2), rng.randint(1, 2)) if complex_entries else 0
            rows[i][j] = rows[j][i] = GaussianRational(re, im)
    return SpinMatrix(rows)


def count_proper_colourings(g: Multigraph, q: int) -> int:
    """Independent oracle: maps to q colours with no monochromatic edge (loops forbid everything)."""
    pairs = [pair for pair, _ in g.edges]
    return sum(
        1
        for colours in product(range(q), repeat=g.vertex_count)
        if all(colours[u] != colours[v] for u, v in pairs)
    )


@pytest.fixture
def rng():
    return random.Random(20240917)
