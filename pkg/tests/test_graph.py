import io

import numpy as np
import pytest
from hypothesis import given, settings

import fastmotif as fm
from fastmotif.graph import Direction, IncidentEdge

from conftest import DATA, small_graphs

O, IN = Direction.OUT, Direction.IN


def test_parse_first_appearance_indexing():
    g = fm.parse_edge_list("a c 4\na c 8\nd a 9")
    assert g.node_count == 3
    assert g.edge_count == 3
    assert [g.index_of(x) for x in "acd"] == [0, 1, 2]
    assert g.ids == ("a", "c", "d")


def test_parse_toy_graph(toy):
    assert toy.node_count == 5
    assert toy.edge_count == 12


def test_parse_drops_self_loops():
    g = fm.parse_edge_list("a a 5\na b 6", drop_self_loops=True)
    assert (g.node_count, g.edge_count, g.dropped_self_loops) == (2, 1, 1)


def test_parse_self_loop_rejected_when_not_dropping():
    with pytest.raises(fm.ParseError):
        fm.parse_edge_list("a a 5\n", drop_self_loops=False)


@pytest.mark.parametrize("text, lineno", [
    ("a b 1\na b x\n", 2),
    ("# c\na b 1.5\n", 2),
    ("a b\n", 1),
])
def test_parse_errors_carry_line_number(text, lineno):
    with pytest.raises(fm.ParseError) as info:
        fm.parse_edge_list(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_parse_empty():
    g = fm.parse_edge_list("")
    assert (g.node_count, g.edge_count) == (0, 0)


def test_parse_format_details():
    text = b"# header\r\nx\ty   7 extra tokens\r\n\r\ny  x\t-3\n"
    g = fm.parse_edge_list(text)
    assert g.edge_count == 2
    assert g.t.tolist() == [-3, 7]
    assert g.ordinal.tolist() == [1, 0]


def test_parse_from_binary_stream():
    g = fm.parse_edge_list(io.BytesIO(b"1 2 3\n2 3 4\n"))
    assert g.edge_count == 2


def test_edges_sorted_by_time_then_ordinal():
    g = fm.parse_edge_list("a b 5\nb a 1\nc a 5\na b 1\n")
    assert [(e.t, e.ordinal) for e in g.edges] == [(1, 1), (1, 3), (5, 0), (5, 2)]


def test_duplicate_edges_are_kept():
    g = fm.parse_edge_list("a b 5\na b 5\na b 5\n")
    assert g.edge_count == 3


def test_graph_arrays_are_read_only(toy):
    with pytest.raises(ValueError):
        toy.t[0] = 1


def test_node_sequence_of_a(toy, toy_index):
    c, d, b = (toy.index_of(x) for x in "cdb")
    got = [(e.t, e.other, e.dir) for e in toy_index.sequences.sequence(toy.index_of("a"))]
    assert got == [(4, c, O), (8, c, O), (9, d, IN), (11, b, O), (15, c, O)]


def test_node_sequence_of_e(toy, toy_index):
    c, d = toy.index_of("c"), toy.index_of("d")
    got = [(e.t, e.other, e.dir) for e in toy_index.sequences.sequence(toy.index_of("e"))]
    assert got == [(1, d, O), (6, c, O), (14, d, IN), (18, d, O), (21, d, IN)]


def test_node_sequences_empty():
    idx = fm.build_node_sequences(fm.parse_edge_list(""))
    assert idx.node_count == 0
    assert len(idx.t) == 0


def test_pair_index_cd(toy, toy_index):
    c, d = toy.index_of("c"), toy.index_of("d")
    # relative to d: d->c at 10 is outward, c->d at 17 is inward
    got = fm.pair_edges_in_window(toy_index.pairs, d, c, 0, 100)
    assert [(t, dr) for t, _, dr in got] == [(10, O), (17, IN)]
    got = fm.pair_edges_in_window(toy_index.pairs, c, d, 0, 100)
    assert [(t, dr) for t, _, dr in got] == [(10, IN), (17, O)]


def test_pair_index_single_edge():
    g = fm.from_edges([(0, 1, 3)])
    idx = fm.build_pair_index(g)
    assert len(idx) == 1
    assert fm.pair_edges_in_window(idx, 0, 1, 0, 10) == [(3, 0, O)]


def test_pair_index_ties_ordered_by_ordinal():
    g = fm.from_edges([(0, 1, 1), (1, 0, 1)])
    got = fm.pair_edges_in_window(fm.build_pair_index(g), 0, 1, 1, 1)
    assert got == [(1, 0, O), (1, 1, IN)]


def test_window_query_toy(toy, toy_index):
    c, d = toy.index_of("c"), toy.index_of("d")
    got = fm.pair_edges_in_window(toy_index.pairs, d, c, 4, 14)
    assert [(t, dr) for t, _, dr in got] == [(10, O)]
    assert fm.pair_edges_in_window(toy_index.pairs, d, c, 11, 16) == []
    assert len(fm.pair_edges_in_window(toy_index.pairs, d, c, -100, 100)) == 2


def test_window_query_unknown_pair(toy, toy_index):
    assert fm.pair_edges_in_window(toy_index.pairs, toy.index_of("b"), toy.index_of("e"), 0, 99) == []


def test_window_query_rejects_inverted_bounds(toy_index):
    with pytest.raises(ValueError):
        fm.pair_edges_in_window(toy_index.pairs, 0, 1, 5, 4)


def test_random_graph_empty():
    g = fm.generate_random_graph(5, 0, 100, seed=3)
    assert (g.node_count, g.edge_count) == (5, 0)


def test_random_graph_deterministic():
    a = fm.generate_random_graph(50, 500, 10000, seed=7)
    b = fm.generate_random_graph(50, 500, 10000, seed=7)
    out_a, out_b = io.StringIO(), io.StringIO()
    fm.write_edge_list(a, out_a)
    fm.write_edge_list(b, out_b)
    assert out_a.getvalue() == out_b.getvalue()
    assert a.t.min() >= 0 and a.t.max() <= 10000
    assert not np.any(a.src == a.dst)


def test_random_graph_two_nodes():
    g = fm.generate_random_graph(2, 10, 100, seed=1)
    assert g.edge_count == 10
    assert {frozenset(p) for p in zip(g.src.tolist(), g.dst.tolist())} == {frozenset((0, 1))}


def test_random_graph_needs_two_nodes():
    with pytest.raises(ValueError):
        fm.generate_random_graph(1, 5, 100, seed=1)


def test_write_then_parse_round_trip():
    g = fm.generate_random_graph(30, 200, 1000, seed=11)
    buf = io.StringIO()
    fm.write_edge_list(g, buf)
    back = fm.parse_edge_list(buf.getvalue())
    original = sorted((g.ids[s], g.ids[d], t) for s, d, t in zip(g.src, g.dst, g.t))
    parsed = sorted((int(back.ids[s]), int(back.ids[d]), t) for s, d, t in zip(back.src, back.dst, back.t))
    assert original == parsed
    assert back.ordinal.tolist() == g.ordinal.tolist()


def test_read_edge_list_file():
    g = fm.read_edge_list(DATA / "toy.txt")
    assert g.name == "toy.txt"
    assert g.edge_count == 12


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_index_invariants(g):
    idx = fm.index_graph(g)
    seq, pairs = idx.sequences, idx.pairs
    assert seq.lengths().sum() == 2 * g.edge_count
    assert pairs.ptr[-1] == g.edge_count
    for u in range(g.node_count):
        s = seq.sequence(u)
        assert s == sorted(s, key=lambda e: (e.t, e.ordinal))
        for e in s:
            # the same edge seen from the other endpoint has the opposite direction
            mirror = [x for x in seq.sequence(e.other) if x.ordinal == e.ordinal]
            assert mirror == [IncidentEdge(e.t, u, e.dir.complement(), e.ordinal)]
    rebuilt = []
    for k, key in enumerate(pairs.keys.tolist()):
        lo, hi = divmod(key, g.node_count)
        a, b = pairs.ptr[k], pairs.ptr[k + 1]
        assert list(zip(pairs.t[a:b], pairs.ordinal[a:b])) == sorted(zip(pairs.t[a:b], pairs.ordinal[a:b]))
        for p in range(a, b):
            src, dst = (lo, hi) if pairs.dir[p] == 0 else (hi, lo)
            rebuilt.append((src, dst, int(pairs.t[p]), int(pairs.ordinal[p])))
    assert sorted(rebuilt) == sorted(g.edges)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_window_queries_partition_pair_sequence(g):
    idx = fm.index_graph(g)
    for key in idx.pairs.keys.tolist():
        v, w = divmod(key, g.node_count)
        full = fm.pair_edges_in_window(idx.pairs, w, v, -1, 10**6)
        for cut in range(-1, 27, 4):
            left = fm.pair_edges_in_window(idx.pairs, w, v, -1, cut)
            right = fm.pair_edges_in_window(idx.pairs, w, v, cut + 1, 10**6)
            assert left + right == full
