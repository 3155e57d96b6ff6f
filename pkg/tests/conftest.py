import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

import fastmotif as fm

DATA = Path(__file__).parent / "data"

TOY_EDGES = """\
a c 4
a c 8
d a 9
a b 11
a c 15
e d 1
e c 6
d e 14
e d 18
d e 21
d c 10
c d 17
"""

# oracle census of the toy graph at delta = 10, computed once and frozen
TOY_CENSUS_DELTA10 = {
    "12|12|13": 1, "12|12|23": 1, "12|12|31": 1, "12|12|32": 1, "12|13|12": 1,
    "12|13|21": 1, "12|13|23": 2, "12|13|31": 3, "12|21|12": 1, "12|21|31": 1,
    "12|23|31": 1, "12|31|12": 2, "12|31|21": 1, "12|31|23": 1, "12|31|32": 2,
    "12|32|12": 2, "12|32|21": 1, "12|32|23": 2, "12|32|31": 1, "12|32|32": 1,
}

_acceptance_lines = []


@pytest.fixture
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def toy():
    return fm.parse_edge_list(TOY_EDGES, name="toy")


@pytest.fixture(scope="session")
def toy_index(toy):
    return fm.index_graph(toy)


@st.composite
def small_graphs(draw, max_nodes=7, max_edges=30, max_t=25):
    """Small graphs with many timestamp ties."""
    n = draw(st.integers(2, max_nodes))
    m = draw(st.integers(0, max_edges))
    edges = []
    for _ in range(m):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 2))
        b = b + 1 if b >= a else b
        edges.append((a, b, draw(st.integers(0, max_t))))
    return fm.from_edges(edges, node_count=n)


def brute_star_pair_at_center(index, u, delta):
    """All ordered triples of S_u within delta, classified by neighbor pattern."""
    seq = index.sequences.sequence(u)
    star, pair = fm.StarCounter(), fm.PairCounter()
    for a, b, c in itertools.combinations(seq, 3):
        if c.t - a.t > delta:
            continue
        x1, x2, x3 = a.other, b.other, c.other
        dirs = (a.dir, b.dir, c.dir)
        if x1 == x2 == x3:
            pair[dirs] = pair[dirs] + 1
        elif x2 == x3:
            star[(0,) + dirs] = star[(0,) + dirs] + 1
        elif x1 == x3:
            star[(1,) + dirs] = star[(1,) + dirs] + 1
        elif x1 == x2:
            star[(2,) + dirs] = star[(2,) + dirs] + 1
    return star, pair


def brute_triangles_at_center(graph, u, delta):
    """Every edge triple forming a triangle through u, classified from u's view."""
    edges = list(enumerate(graph.edges))  # position == rank
    tri = fm.TriCounter()
    for (ra, ea), (rb, eb), (rc, ec) in itertools.combinations(edges, 3):
        if ec.t - ea.t > delta:
            continue
        trio = [(ra, ea), (rb, eb), (rc, ec)]
        nodes = {ea.src, ea.dst, eb.src, eb.dst, ec.src, ec.dst}
        pairs = {frozenset((e.src, e.dst)) for _, e in trio}
        if len(nodes) != 3 or len(pairs) != 3 or u not in nodes:
            continue
        at_u = [(r, e) for r, e in trio if u in (e.src, e.dst)]
        (ri, ei), (rj, ej) = at_u
        rk, ek = next((r, e) for r, e in trio if u not in (e.src, e.dst))
        v = ei.dst if ei.src == u else ei.src
        di = 0 if ei.src == u else 1
        dj = 0 if ej.src == u else 1
        dk = 0 if ek.src == v else 1
        kind = 0 if rk < ri else (1 if rk < rj else 2)
        tri[(kind, di, dj, dk)] = tri[(kind, di, dj, dk)] + 1
    return tri
