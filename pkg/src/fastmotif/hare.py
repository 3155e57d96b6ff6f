"""Hierarchical parallel execution of the star/pair and triangle sweeps.

Work is split two ways.  Nodes whose degree exceeds a threshold are
*heavy*: their first-edge positions are cut into contiguous shards, each
its own work item (intra-node parallelism).  All other nodes are *light*
and go into the queue whole, a batch of them per item (inter-node
parallelism).  Workers pull items from one shared queue as they free up,
each accumulating into counters nobody else touches; the per-worker
counters are added together at the end.  Since addition commutes, the
census does not depend on the worker count, threshold, shard size or the
order in which items were claimed.

Workers are threads.  The compiled kernels release the GIL, and the
graph indices are read-only, so threads share them without copies.
"""
from __future__ import annotations

import math
import queue
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import GraphIndex, TemporalGraph
from .star import scratch_maps
from .taxonomy import (U64_MAX, CounterOverflowError, MotifCensus, PairCounter,
                       StarCounter, TriangleMode, TriCounter, merge_census,
                       signature_category)

__all__ = [
    "ConfigurationError",
    "RunConfig",
    "SchedulePlan",
    "auto_degree_threshold",
    "plan_schedule",
    "run_parallel",
    "MOTIF_KINDS",
]

MOTIF_KINDS = frozenset({"star", "pair", "triangle"})
TOP_NODES_FOR_THRESHOLD = 20


class ConfigurationError(ValueError):
    pass


def auto_degree_threshold(graph: TemporalGraph) -> int:
    """Degree of the 20th-highest-degree node, or the maximum degree when
    there are fewer than 20 nodes (so nothing is heavy)."""
    deg = np.sort(graph.degrees())[::-1]
    if len(deg) == 0:
        return 0
    if len(deg) < TOP_NODES_FOR_THRESHOLD:
        return int(deg[0])
    return int(deg[TOP_NODES_FOR_THRESHOLD - 1])


@dataclass
class SchedulePlan:
    heavy: list[tuple[int, list[tuple[int, int]]]]
    light: list[int]
    thr_d: float
    shard_target: int
    motif_filter: frozenset = MOTIF_KINDS

    def shard_count(self) -> int:
        return sum(len(shards) for _, shards in self.heavy)


def plan_schedule(graph: TemporalGraph, thr_d: float, shard_target: int = 4096,
                  motif_filter=MOTIF_KINDS) -> SchedulePlan:
    """Split nodes into heavy (degree > ``thr_d``) and light.

    A heavy node's first-edge positions ``0 .. |S_u| - 2`` are cut into
    chunks of ``shard_target`` as half-open ``(start, stop)`` ranges.
    """
    if thr_d < 0:
        raise ValueError("thr_d must be non-negative")
    if shard_target < 1:
        raise ValueError("shard_target must be at least 1")
    deg = graph.degrees()
    heavy, light = [], []
    for u, d in enumerate(deg.tolist()):
        if d > thr_d:
            last = max(d - 1, 0)
            shards = [(lo, min(lo + shard_target, last)) for lo in range(0, last, shard_target)]
            heavy.append((u, shards))
        else:
            light.append(u)
    return SchedulePlan(heavy, light, thr_d, shard_target, frozenset(motif_filter))


@dataclass
class RunConfig:
    delta: int
    workers: int = 1
    thr_d: int | float | str = "auto"
    tri_mode: TriangleMode | str = TriangleMode.COUNT_ALL
    motif_filter: frozenset = MOTIF_KINDS
    shard_target: int = 4096
    batch_size: int = 64

    def __post_init__(self):
        self.tri_mode = TriangleMode(self.tri_mode)
        self.motif_filter = frozenset(self.motif_filter)
        if self.delta < 0:
            raise ConfigurationError("delta must be non-negative")
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")
        if not self.motif_filter <= MOTIF_KINDS or not self.motif_filter:
            raise ConfigurationError(f"motif filter must be a non-empty subset of {sorted(MOTIF_KINDS)}")
        if self.tri_mode is TriangleMode.REMOVAL and self.workers > 1:
            raise ConfigurationError("removal triangle mode only runs with a single worker")
        if self.shard_target < 1 or self.batch_size < 1:
            raise ConfigurationError("shard_target and batch_size must be positive")

    def resolve_threshold(self, graph: TemporalGraph) -> float:
        if self.thr_d == "auto":
            return auto_degree_threshold(graph)
        if self.thr_d is None or self.thr_d == math.inf:
            return math.inf
        return int(self.thr_d)


def _work_items(plan: SchedulePlan, degrees: np.ndarray, batch_size: int) -> list:
    """Heavy shards first, then light batches in descending degree order."""
    items = [("range", u, lo, hi) for u, shards in plan.heavy for lo, hi in shards]
    light = np.asarray(plan.light, dtype=np.int64)
    light = light[np.argsort(-degrees[light], kind="stable")] if len(light) else light
    light = light[degrees[light] >= 2]  # one incident edge can't anchor anything
    items.extend(("nodes", light[k:k + batch_size]) for k in range(0, len(light), batch_size))
    return items


class _StarWorker:
    def __init__(self, index: GraphIndex, delta: int):
        self.seq = index.sequences
        self.delta = delta
        self.m_in, self.m_out = scratch_maps(index.node_count)
        self.star = np.zeros(StarCounter.shape, np.int64)
        self.pair = np.zeros(PairCounter.shape, np.int64)

    def __call__(self, item) -> None:
        seq = self.seq
        if item[0] == "range":
            _, u, lo, hi = item
            _kernels.star_pair_center(seq.ptr, seq.t, seq.other, seq.dir, u, self.delta,
                                      lo, hi, self.m_in, self.m_out, self.star, self.pair)
        else:
            _kernels.star_pair_nodes(seq.ptr, seq.t, seq.other, seq.dir, item[1], self.delta,
                                     self.m_in, self.m_out, self.star, self.pair)


class _TriWorker:
    def __init__(self, index: GraphIndex, delta: int):
        seq, p = index.sequences, index.pairs
        self.arrays = (seq.ptr, seq.t, seq.other, seq.dir, seq.rank,
                       p.keys, p.ptr, p.t, p.rank, p.dir)
        self.delta = delta
        self.live = np.ones(index.node_count, np.uint8)
        self.tri = np.zeros(TriCounter.shape, np.int64)

    def __call__(self, item) -> None:
        if item[0] == "range":
            _, u, lo, hi = item
            _kernels.triangle_center(*self.arrays, u, self.delta, lo, hi, self.live, self.tri)
        else:
            _kernels.triangle_nodes(*self.arrays, item[1], self.delta, self.live, self.tri)


def _drain(work: queue.SimpleQueue, worker) -> object:
    while True:
        try:
            item = work.get_nowait()
        except queue.Empty:
            return worker
        worker(item)


def _run_pool(items: list, make_worker, workers: int) -> list:
    if workers == 1:
        worker = make_worker()
        for item in items:
            worker(item)
        return [worker]
    work: queue.SimpleQueue = queue.SimpleQueue()
    for item in items:
        work.put(item)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_drain, work, make_worker()) for _ in range(workers)]
        return [f.result() for f in futures]


def _reduce(arrays: list[np.ndarray], counter_type):
    """Exact sum of per-worker int64 arrays into an unsigned 64-bit counter."""
    total = np.zeros(counter_type.shape, dtype=object)
    for arr in arrays:
        if np.any(arr < 0):
            raise CounterOverflowError("a worker counter wrapped past 2**63")
        total = total + arr.astype(object)
    if any(x > U64_MAX for x in total.ravel()):
        raise CounterOverflowError(f"{counter_type.__name__} exceeds 64 bits")
    return counter_type(total.astype(np.uint64))


def run_parallel(index: GraphIndex, config: RunConfig) -> MotifCensus:
    """Count every motif class of the indexed graph under ``config``.

    Phase wall times in milliseconds are left in ``census.meta["timings_ms"]``.
    """
    graph = index.graph
    delta = index.clamp_delta(config.delta)
    thr_d = config.resolve_threshold(graph)
    plan = plan_schedule(graph, thr_d, config.shard_target, config.motif_filter)
    items = _work_items(plan, graph.degrees(), config.batch_size)
    timings = {}

    star, pair = StarCounter(), PairCounter()
    tick = time.perf_counter()
    if config.motif_filter & {"star", "pair"}:
        done = _run_pool(items, lambda: _StarWorker(index, delta), config.workers)
        star = _reduce([w.star for w in done], StarCounter)
        pair = _reduce([w.pair for w in done], PairCounter)
    timings["star_pair"] = (time.perf_counter() - tick) * 1e3

    tri = TriCounter()
    tick = time.perf_counter()
    if "triangle" in config.motif_filter:
        if config.tri_mode is TriangleMode.REMOVAL:
            cells = np.zeros(TriCounter.shape, np.int64)
            w = _TriWorker(index, delta)
            _kernels.triangle_removal(*w.arrays, delta, cells)
            tri = _reduce([cells], TriCounter)
        else:
            done = _run_pool(items, lambda: _TriWorker(index, delta), config.workers)
            tri = _reduce([w.tri for w in done], TriCounter)
    timings["triangle"] = (time.perf_counter() - tick) * 1e3

    tick = time.perf_counter()
    census = merge_census(star, pair, tri, config.tri_mode, delta=config.delta)
    if config.motif_filter != MOTIF_KINDS:
        census.counts = {s: (c if signature_category(s) in config.motif_filter else 0)
                         for s, c in census.counts.items()}
    timings["merge"] = (time.perf_counter() - tick) * 1e3
    census.meta = {
        "input": graph.name,
        "edges": graph.edge_count,
        "mode": config.tri_mode.value,
        "workers": config.workers,
        "thr_d": thr_d if thr_d != math.inf else "inf",
        "heavy_nodes": len(plan.heavy),
        "work_items": len(items),
        "motifs": sorted(config.motif_filter),
        "timings_ms": timings,
    }
    return census
