"""Exact counting of 2- and 3-node, 3-edge temporal motifs.

Typical use::

    from fastmotif import read_edge_list, index_graph, run_parallel, RunConfig

    index = index_graph(read_edge_list("edges.txt"))
    census = run_parallel(index, RunConfig(delta=600, workers=4))
    census["12|21|12"]
"""
from .graph import (Direction, GraphIndex, IncidentEdge, NodeSequenceIndex, PairEdgeIndex,
                    ParseError, TemporalEdge, TemporalGraph, build_node_sequences,
                    build_pair_index, from_edges, generate_random_graph, index_graph,
                    pair_edges_in_window, parse_edge_list, read_edge_list, write_edge_list)
from .hare import (ConfigurationError, RunConfig, SchedulePlan, auto_degree_threshold,
                   plan_schedule, run_parallel)
from .oracle import InstanceRecord, OracleInputTooLarge, enumerate_instances, oracle_census
from .star import CenterStarResult, count_star_pair, count_star_pair_at_center
from .taxonomy import (ALL_SIGNATURES, PAIR_SIGNATURES, STAR_SIGNATURES, TRIANGLE_SIGNATURES,
                       CounterOverflowError, InternalConsistencyError, MotifCensus,
                       MotifClassificationError, PairCounter, StarCounter, StarType,
                       TriangleMode, TriCounter, TriType, canonical_signature,
                       label_for_signature, merge_census, pair_cell_signature,
                       signature_category, star_cell_signature, tri_cell_signature)
from .triangle import count_triangles, count_triangles_at_center

__version__ = "0.1.0"


def count_motifs(graph: TemporalGraph, delta: int, **config) -> MotifCensus:
    """Index ``graph`` and count all 36 motif classes within ``delta``."""
    return run_parallel(index_graph(graph), RunConfig(delta=delta, **config))
