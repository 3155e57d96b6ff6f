"""Star and pair motif counting, one center node at a time.

For a center ``u`` with incident sequence ``S_u``, every edge is tried as
the first edge of a motif and the following edges within ``delta`` as the
third.  Instead of rescanning the edges in between for each (first, third)
choice, the scan over third edges accumulates per-neighbor in/out counts of
everything already passed; those counts are exactly the second-edge
candidates.  Cost per center is O(|S_u| * edges within delta).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import GraphIndex
from .taxonomy import PairCounter, StarCounter

__all__ = ["CenterStarResult", "count_star_pair_at_center", "count_star_pair"]


@dataclass
class CenterStarResult:
    star: StarCounter = field(default_factory=StarCounter)
    pair: PairCounter = field(default_factory=PairCounter)

    def __add__(self, other: "CenterStarResult") -> "CenterStarResult":
        return CenterStarResult(self.star + other.star, self.pair + other.pair)


def scratch_maps(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Zeroed in/out neighbor-count arrays; the kernels leave them zeroed."""
    return np.zeros(node_count, np.int64), np.zeros(node_count, np.int64)


def _range(index: GraphIndex, u: int, first_edge_range) -> tuple[int, int]:
    s = index.sequences.length(u)
    if first_edge_range is None:
        return 0, s
    lo, hi = first_edge_range
    if not 0 <= lo <= hi:
        raise ValueError(f"bad first-edge range {first_edge_range!r}")
    return lo, min(hi, s)


def count_star_pair_at_center(index: GraphIndex, u: int, delta: int,
                              first_edge_range: tuple[int, int] | None = None
                              ) -> CenterStarResult:
    """Star/pair contributions of center ``u``.

    ``first_edge_range`` is a 0-based half-open ``(start, stop)`` interval of
    positions in ``S_u`` tried as first edge; ``None`` means all of them.
    Disjoint ranges sum to the full-range result.
    """
    lo, hi = _range(index, u, first_edge_range)
    star = np.zeros(StarCounter.shape, np.int64)
    pair = np.zeros(PairCounter.shape, np.int64)
    seq = index.sequences
    m_in, m_out = scratch_maps(index.node_count)
    _kernels.star_pair_center(seq.ptr, seq.t, seq.other, seq.dir, u,
                              index.clamp_delta(delta), lo, hi, m_in, m_out, star, pair)
    return CenterStarResult(StarCounter(star), PairCounter(pair))


def count_star_pair(index: GraphIndex, delta: int) -> tuple[StarCounter, PairCounter]:
    """Sequential sweep over every center with full ranges."""
    star = np.zeros(StarCounter.shape, np.int64)
    pair = np.zeros(PairCounter.shape, np.int64)
    seq = index.sequences
    nodes = np.arange(index.node_count, dtype=np.int64)
    _kernels.star_pair_nodes(seq.ptr, seq.t, seq.other, seq.dir, nodes,
                             index.clamp_delta(delta), *scratch_maps(index.node_count),
                             star, pair)
    return StarCounter(star), PairCounter(pair)
