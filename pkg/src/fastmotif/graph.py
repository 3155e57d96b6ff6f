"""Temporal edge lists, the immutable graph, and its two lookup indices.

A temporal graph is stored column-wise in numpy arrays sorted by the total
order ``(t, ordinal)``.  Two derived indices feed the counting kernels:

* :class:`NodeSequenceIndex` -- for every node ``u`` the time-ordered list
  of incident edges ``S_u``, in CSR layout.
* :class:`PairEdgeIndex` -- for every unordered node pair the time-ordered
  list of edges between them, also CSR, keyed by ``lo * n + hi``.

Every edge also carries its *rank*, its position in the globally sorted
edge list.  Comparing ranks is the same as comparing ``(t, ordinal)``.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "Direction",
    "TemporalEdge",
    "IncidentEdge",
    "TemporalGraph",
    "NodeSequenceIndex",
    "PairEdgeIndex",
    "ParseError",
    "parse_edge_list",
    "read_edge_list",
    "write_edge_list",
    "from_edges",
    "build_node_sequences",
    "build_pair_index",
    "pair_edges_in_window",
    "generate_random_graph",
    "GraphIndex",
    "index_graph",
]


class Direction(IntEnum):
    """Edge direction relative to a reference node."""

    OUT = 0
    IN = 1

    def complement(self) -> "Direction":
        return Direction(1 - self)

    def __str__(self) -> str:
        return "o" if self is Direction.OUT else "in"


class ParseError(ValueError):
    """Malformed edge-list input; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class TemporalEdge(NamedTuple):
    src: int
    dst: int
    t: int
    ordinal: int


class IncidentEdge(NamedTuple):
    t: int
    other: int
    dir: Direction
    ordinal: int


@dataclass(frozen=True, eq=False)
class TemporalGraph:
    """Immutable directed temporal multigraph.

    ``src``, ``dst``, ``t`` and ``ordinal`` are parallel int64 arrays sorted
    by ``(t, ordinal)``.  ``ids[k]`` is the external id of node ``k``.
    """

    node_count: int
    src: np.ndarray
    dst: np.ndarray
    t: np.ndarray
    ordinal: np.ndarray
    ids: tuple = ()
    dropped_self_loops: int = 0
    name: str = ""
    _index_of: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for arr in (self.src, self.dst, self.t, self.ordinal):
            arr.setflags(write=False)
        if not self._index_of:
            object.__setattr__(self, "_index_of", {x: k for k, x in enumerate(self.ids)})

    @property
    def edge_count(self) -> int:
        return len(self.t)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def edges(self) -> list[TemporalEdge]:
        return [
            TemporalEdge(int(a), int(b), int(c), int(d))
            for a, b, c, d in zip(self.src, self.dst, self.t, self.ordinal)
        ]

    def index_of(self, node_id) -> int:
        """Dense index for an external node id."""
        return self._index_of[node_id]

    def id_of(self, index: int):
        return self.ids[index]

    def degrees(self) -> np.ndarray:
        """Total degree (in + out, multi-edges counted) of every node."""
        deg = np.bincount(self.src, minlength=self.node_count)
        deg += np.bincount(self.dst, minlength=self.node_count)
        return deg

    def shifted(self, offset: int) -> "TemporalGraph":
        """Copy with every timestamp translated by ``offset``."""
        return TemporalGraph(
            self.node_count, self.src.copy(), self.dst.copy(), self.t + offset,
            self.ordinal.copy(), self.ids, self.dropped_self_loops, self.name,
        )


def from_edges(edges: Iterable, node_count: int | None = None, ids=None,
               dropped_self_loops: int = 0, name: str = "") -> TemporalGraph:
    """Build a graph from ``(src, dst, t)`` triples of dense node indices.

    Ordinals follow the iteration order of ``edges``.
    """
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 3)
    src, dst, t = arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy()
    if np.any(src == dst):
        raise ValueError("self-loops are not allowed")
    if np.any(src < 0) or np.any(dst < 0):
        raise ValueError("node indices must be non-negative")
    if node_count is None:
        node_count = int(max(src.max(initial=-1), dst.max(initial=-1)) + 1)
    elif len(src) and max(src.max(), dst.max()) >= node_count:
        raise ValueError("node index out of range")
    ordinal = np.arange(len(t), dtype=np.int64)
    order = np.lexsort((ordinal, t))
    if ids is None:
        ids = tuple(range(node_count))
    return TemporalGraph(
        int(node_count), src[order], dst[order], t[order], ordinal[order],
        tuple(ids), dropped_self_loops, name,
    )


def _lines(source) -> Iterable:
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source)
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_edge_list(source, drop_self_loops: bool = True, name: str = "") -> TemporalGraph:
    """Parse a whitespace-separated ``SRC DST T`` edge list.

    ``source`` may be a str, bytes, or any iterable of text/byte lines.
    Node ids are arbitrary tokens, indexed densely by first appearance.
    Lines starting with ``#`` and blank lines are skipped; tokens past the
    third are ignored.  Self-loops are dropped and tallied in
    ``dropped_self_loops``, or rejected when ``drop_self_loops`` is false.
    """
    index: dict[str, int] = {}
    ids: list[str] = []
    rows: list[tuple[int, int, int]] = []
    dropped = 0
    for lineno, line in enumerate(_lines(source), start=1):
        if isinstance(line, (bytes, bytearray)):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError("invalid UTF-8", lineno) from exc
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 3:
            raise ParseError(f"expected 'SRC DST T', got {line!r}", lineno)
        a, b, ts = tokens[:3]
        try:
            t = int(ts)
        except ValueError:
            raise ParseError(f"timestamp {ts!r} is not an integer", lineno) from None
        if not -(2**63) <= t < 2**63:
            raise ParseError(f"timestamp {ts!r} out of 64-bit range", lineno)
        if a == b:
            if not drop_self_loops:
                raise ParseError(f"self-loop on node {a!r}", lineno)
            dropped += 1
            continue
        for x in (a, b):
            if x not in index:
                index[x] = len(ids)
                ids.append(x)
        rows.append((index[a], index[b], t))
    return from_edges(rows, node_count=len(ids), ids=ids,
                      dropped_self_loops=dropped, name=name)


def read_edge_list(path, drop_self_loops: bool = True) -> TemporalGraph:
    with open(path, "rb") as fh:
        return parse_edge_list(fh, drop_self_loops=drop_self_loops,
                               name=os.path.basename(os.fspath(path)))


def write_edge_list(graph: TemporalGraph, fh) -> None:
    """Write ``SRC DST T`` lines in ordinal (ingestion) order."""
    order = np.argsort(graph.ordinal, kind="stable")
    ids = graph.ids
    for k in order:
        fh.write(f"{ids[graph.src[k]]} {ids[graph.dst[k]]} {graph.t[k]}\n")


@dataclass(frozen=True, eq=False)
class NodeSequenceIndex:
    """Per-node incident edge sequences in CSR layout.

    Entries ``ptr[u]:ptr[u+1]`` of the parallel arrays hold ``S_u`` sorted by
    ``(t, ordinal)``.  ``dir`` is 0 (out) when ``u`` is the source.
    """

    ptr: np.ndarray
    t: np.ndarray
    other: np.ndarray
    dir: np.ndarray
    rank: np.ndarray
    ordinal: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.ptr) - 1

    def length(self, u: int) -> int:
        return int(self.ptr[u + 1] - self.ptr[u])

    def lengths(self) -> np.ndarray:
        return np.diff(self.ptr)

    def sequence(self, u: int) -> list[IncidentEdge]:
        lo, hi = self.ptr[u], self.ptr[u + 1]
        return [
            IncidentEdge(int(t), int(v), Direction(int(d)), int(o))
            for t, v, d, o in zip(self.t[lo:hi], self.other[lo:hi],
                                  self.dir[lo:hi], self.ordinal[lo:hi])
        ]


def build_node_sequences(graph: TemporalGraph) -> NodeSequenceIndex:
    m = graph.edge_count
    rank = np.arange(m, dtype=np.int64)
    center = np.concatenate([graph.src, graph.dst])
    other = np.concatenate([graph.dst, graph.src])
    direction = np.concatenate([np.zeros(m, np.int8), np.ones(m, np.int8)])
    ranks = np.concatenate([rank, rank])
    order = np.lexsort((ranks, center))
    ptr = np.zeros(graph.node_count + 1, dtype=np.int64)
    np.cumsum(np.bincount(center, minlength=graph.node_count), out=ptr[1:])
    ranks = ranks[order]
    return NodeSequenceIndex(
        ptr=ptr,
        t=graph.t[ranks],
        other=other[order],
        dir=direction[order],
        rank=ranks,
        ordinal=graph.ordinal[ranks],
    )


@dataclass(frozen=True, eq=False)
class PairEdgeIndex:
    """Edges grouped by unordered node pair.

    ``keys`` is sorted and holds ``lo * node_count + hi`` for every pair with
    at least one edge; the pair's records live at ``ptr[k]:ptr[k+1]``.
    ``dir`` is relative to the smaller node index (0 means ``lo -> hi``).
    """

    node_count: int
    keys: np.ndarray
    ptr: np.ndarray
    t: np.ndarray
    rank: np.ndarray
    dir: np.ndarray
    ordinal: np.ndarray

    def slot(self, v: int, w: int) -> int:
        """Position of pair ``{v, w}`` in ``keys`` or -1."""
        lo, hi = (v, w) if v < w else (w, v)
        key = lo * self.node_count + hi
        k = int(np.searchsorted(self.keys, key))
        if k < len(self.keys) and self.keys[k] == key:
            return k
        return -1

    def __len__(self) -> int:
        return len(self.keys)


def build_pair_index(graph: TemporalGraph) -> PairEdgeIndex:
    n = graph.node_count
    lo = np.minimum(graph.src, graph.dst)
    hi = np.maximum(graph.src, graph.dst)
    key = lo * n + hi
    order = np.argsort(key, kind="stable")
    keys, counts = np.unique(key[order], return_counts=True)
    ptr = np.zeros(len(keys) + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    direction = (graph.src != lo).astype(np.int8)
    return PairEdgeIndex(
        node_count=n,
        keys=keys.astype(np.int64),
        ptr=ptr,
        t=graph.t[order],
        rank=order.astype(np.int64),
        dir=direction[order],
        ordinal=graph.ordinal[order],
    )


def pair_edges_in_window(index: PairEdgeIndex, v: int, w: int, lo: int,
                         hi: int) -> list[tuple[int, int, Direction]]:
    """Edges between ``v`` and ``w`` with ``lo <= t <= hi``.

    Returns ``(t, ordinal, dir)`` with ``dir`` relative to ``v``, in
    ``(t, ordinal)`` order.
    """
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    k = index.slot(v, w)
    if k < 0:
        return []
    a, b = index.ptr[k], index.ptr[k + 1]
    ts = index.t[a:b]
    start = a + int(np.searchsorted(ts, lo, side="left"))
    stop = a + int(np.searchsorted(ts, hi, side="right"))
    flip = v > w
    return [
        (int(index.t[p]), int(index.ordinal[p]), Direction(int(index.dir[p]) ^ flip))
        for p in range(start, stop)
    ]


def generate_random_graph(nodes: int, edges: int, t_max: int, seed: int) -> TemporalGraph:
    """Uniform random temporal graph without self-loops.

    Endpoints are uniform over ordered pairs of distinct nodes, timestamps
    uniform integers in ``[0, t_max]``.  Deterministic for a fixed seed.
    """
    if edges < 0 or t_max < 0:
        raise ValueError("edges and t_max must be non-negative")
    if nodes < 2 and edges > 0:
        raise ValueError("need at least 2 nodes to place an edge")
    nodes = max(nodes, 0)
    rng = np.random.default_rng(seed)
    src = rng.integers(0, nodes, size=edges) if edges else np.zeros(0, np.int64)
    dst = (src + rng.integers(1, nodes, size=edges)) % nodes if edges else src
    t = rng.integers(0, t_max, size=edges, endpoint=True) if edges else src
    return from_edges(np.column_stack([src, dst, t]), node_count=nodes,
                      name=f"random-n{nodes}-m{edges}-s{seed}")


@dataclass(frozen=True, eq=False)
class GraphIndex:
    """A graph bundled with both lookup indices, as consumed by the engines."""

    graph: TemporalGraph
    sequences: NodeSequenceIndex
    pairs: PairEdgeIndex

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    def clamp_delta(self, delta: int) -> int:
        """``delta`` capped at the graph's time span, which changes no count."""
        if delta < 0:
            raise ValueError("delta must be non-negative")
        if self.graph.edge_count == 0:
            return 0
        span = int(self.graph.t[-1]) - int(self.graph.t[0])
        if span >= 2**62:
            raise ValueError("timestamps must span less than 2**62 time units")
        return min(int(delta), span)


def index_graph(graph: TemporalGraph) -> GraphIndex:
    return GraphIndex(graph, build_node_sequences(graph), build_pair_index(graph))
