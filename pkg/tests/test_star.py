import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import fastmotif as fm
from fastmotif.graph import Direction
from fastmotif.taxonomy import StarType

from conftest import brute_star_pair_at_center, small_graphs

O, IN = Direction.OUT, Direction.IN


def test_center_a_matches_worked_example(toy, toy_index):
    res = fm.count_star_pair_at_center(toy_index, toy.index_of("a"), 10)
    assert res.star.nonzero() == {
        (StarType.III, O, O, IN): 1,
        (StarType.III, O, O, O): 1,
        (StarType.II, O, IN, O): 1,
        (StarType.II, O, O, O): 1,
    }
    assert res.pair.total() == 0


def test_short_sequence_gives_nothing(toy, toy_index):
    res = fm.count_star_pair_at_center(toy_index, toy.index_of("b"), 100)
    assert res.star.total() == 0 and res.pair.total() == 0


def test_center_e_matches_brute_force(toy, toy_index):
    e = toy.index_of("e")
    res = fm.count_star_pair_at_center(toy_index, e, 10)
    star, pair = brute_star_pair_at_center(toy_index, e, 10)
    assert res.star == star and res.pair == pair
    # (14, d, in), (18, d, o), (21, d, in) is the M_65 pair instance
    assert res.pair[IN, O, IN] == 1


def test_empty_graph():
    star, pair = fm.count_star_pair(fm.index_graph(fm.parse_edge_list("")), 10)
    assert star.total() == 0 and pair.total() == 0


def test_three_parallel_edges():
    idx = fm.index_graph(fm.from_edges([(0, 1, 1), (0, 1, 2), (0, 1, 3)]))
    star, pair = fm.count_star_pair(idx, 10)
    assert pair.nonzero() == {(O, O, O): 1, (IN, IN, IN): 1}
    assert star.total() == 0


def test_full_toy_matches_oracle(toy, toy_index):
    star, pair = fm.count_star_pair(toy_index, 10)
    census = fm.merge_census(star, pair, fm.TriCounter())
    truth = fm.oracle_census(toy, 10)
    for sig in fm.STAR_SIGNATURES + fm.PAIR_SIGNATURES:
        assert census[sig] == truth[sig], sig


def test_bad_range_rejected(toy_index):
    with pytest.raises(ValueError):
        fm.count_star_pair_at_center(toy_index, 0, 10, (3, 1))


@settings(max_examples=80, deadline=None)
@given(small_graphs(), st.integers(0, 30))
def test_every_center_matches_brute_force(g, delta):
    idx = fm.index_graph(g)
    for u in range(g.node_count):
        res = fm.count_star_pair_at_center(idx, u, delta)
        star, pair = brute_star_pair_at_center(idx, u, delta)
        assert res.star == star and res.pair == pair


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_nodes=4, max_edges=40), st.integers(0, 30), st.data())
def test_range_additivity(g, delta, data):
    idx = fm.index_graph(g)
    for u in range(g.node_count):
        s = idx.sequences.length(u)
        cuts = sorted(data.draw(st.lists(st.integers(0, s), max_size=4)))
        bounds = [0] + cuts + [s]
        parts = fm.CenterStarResult()
        for lo, hi in zip(bounds, bounds[1:]):
            parts = parts + fm.count_star_pair_at_center(idx, u, delta, (lo, hi))
        full = fm.count_star_pair_at_center(idx, u, delta)
        assert parts.star == full.star and parts.pair == full.pair


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(0, 20), st.integers(0, 20))
def test_delta_monotone_and_pair_symmetry(g, d1, d2):
    lo, hi = sorted((d1, d2))
    idx = fm.index_graph(g)
    s_lo, p_lo = fm.count_star_pair(idx, lo)
    s_hi, p_hi = fm.count_star_pair(idx, hi)
    assert np.all(s_lo.cells <= s_hi.cells) and np.all(p_lo.cells <= p_hi.cells)
    for key in fm.PairCounter.keys():
        assert p_hi[key] == p_hi[tuple(1 - k for k in key)]
