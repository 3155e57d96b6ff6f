"""Triangle motif counting from each center node.

Two incident edges of the center ``u`` to distinct neighbors ``v`` (the
earlier one) and ``w`` fix two sides of a triangle; the third side is any
``v``-``w`` edge inside the time window, found by binary search on the
pair index.  Its position relative to the two center edges gives the
triangle type (before, between, after).

In count-all mode every instance is seen from all three of its vertices
and the census divides by three; removal mode retires each center after
processing so every instance is seen once, which only works sequentially.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .graph import GraphIndex
from .taxonomy import TriangleMode, TriCounter

__all__ = ["TriangleMode", "count_triangles_at_center", "count_triangles"]


def _pair_arrays(index: GraphIndex):
    p = index.pairs
    return p.keys, p.ptr, p.t, p.rank, p.dir


def count_triangles_at_center(index: GraphIndex, u: int, delta: int,
                              first_edge_range: tuple[int, int] | None = None,
                              live_mask=None) -> TriCounter:
    """Triangle cell increments with ``u`` as center.

    ``live_mask`` is an optional boolean array over nodes; neighbors where
    it is false are skipped.  ``first_edge_range`` works as in
    :func:`fastmotif.star.count_star_pair_at_center`.
    """
    seq = index.sequences
    s = seq.length(u)
    lo, hi = (0, s) if first_edge_range is None else first_edge_range
    if not 0 <= lo <= hi:
        raise ValueError(f"bad first-edge range {first_edge_range!r}")
    if live_mask is None:
        live = np.ones(index.node_count, np.uint8)
    else:
        live = np.asarray(live_mask, dtype=np.uint8)
        if live.shape != (index.node_count,):
            raise ValueError("live_mask must have one entry per node")
    tri = np.zeros(TriCounter.shape, np.int64)
    _kernels.triangle_center(seq.ptr, seq.t, seq.other, seq.dir, seq.rank,
                             *_pair_arrays(index), u, index.clamp_delta(delta),
                             lo, min(hi, s), live, tri)
    return TriCounter(tri)


def count_triangles(index: GraphIndex, delta: int,
                    mode: TriangleMode | str = TriangleMode.COUNT_ALL) -> TriCounter:
    """Sequential sweep over all centers in ascending node order."""
    mode = TriangleMode(mode)
    seq = index.sequences
    tri = np.zeros(TriCounter.shape, np.int64)
    delta = index.clamp_delta(delta)
    if mode is TriangleMode.REMOVAL:
        _kernels.triangle_removal(seq.ptr, seq.t, seq.other, seq.dir, seq.rank,
                                  *_pair_arrays(index), delta, tri)
    else:
        nodes = np.arange(index.node_count, dtype=np.int64)
        live = np.ones(index.node_count, np.uint8)
        _kernels.triangle_nodes(seq.ptr, seq.t, seq.other, seq.dir, seq.rank,
                                *_pair_arrays(index), nodes, delta, live, tri)
    return TriCounter(tri)
