"""Brute-force enumeration of every motif instance.

Deliberately naive: walks the globally time-sorted edge list and tries
every edge triple inside the window, keeping those on at most three
connected nodes.  No per-node indices, no counters, no parallelism.  It is
the ground truth the engines are tested against.
"""
from __future__ import annotations

from typing import Iterator, NamedTuple

from .graph import TemporalGraph
from .taxonomy import MotifCensus, canonical_signature

__all__ = ["InstanceRecord", "OracleInputTooLarge", "enumerate_instances",
           "oracle_census", "DEFAULT_MAX_EDGES"]

DEFAULT_MAX_EDGES = 5000


class OracleInputTooLarge(ValueError):
    pass


class InstanceRecord(NamedTuple):
    ordinals: tuple[int, int, int]
    signature: str


def enumerate_instances(graph: TemporalGraph, delta: int) -> Iterator[InstanceRecord]:
    """Yield each motif instance once, edges in ``(t, ordinal)`` order."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    src = graph.src.tolist()
    dst = graph.dst.tolist()
    t = graph.t.tolist()
    ordinal = graph.ordinal.tolist()
    m = len(t)
    for a in range(m):
        ends_a = {src[a], dst[a]}
        for b in range(a + 1, m):
            if t[b] - t[a] > delta:
                break
            if not ends_a & {src[b], dst[b]}:
                continue  # two disjoint edges already span four nodes
            nodes_ab = ends_a | {src[b], dst[b]}
            for c in range(b + 1, m):
                if t[c] - t[a] > delta:
                    break
                if len(nodes_ab | {src[c], dst[c]}) > 3:
                    continue
                sig = canonical_signature(
                    [(src[a], dst[a]), (src[b], dst[b]), (src[c], dst[c])])
                yield InstanceRecord((ordinal[a], ordinal[b], ordinal[c]), sig)


def oracle_census(graph: TemporalGraph, delta: int,
                  max_edges: int | None = DEFAULT_MAX_EDGES) -> MotifCensus:
    if max_edges is not None and graph.edge_count > max_edges:
        raise OracleInputTooLarge(
            f"{graph.edge_count} edges exceeds the oracle cap of {max_edges}")
    census = MotifCensus.from_signatures(
        (rec.signature for rec in enumerate_instances(graph, delta)), delta)
    census.meta = {"input": graph.name, "edges": graph.edge_count, "mode": "oracle",
                   "workers": 1}
    return census
