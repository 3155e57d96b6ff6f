"""
Counting motifs on a twelve-edge toy graph
==========================================

Walk through one center at a time, then the whole census.
"""
from pathlib import Path

import fastmotif as fm

data = Path(__file__).resolve().parents[1] / "tests" / "data" / "toy.txt"
g = fm.read_edge_list(data)
idx = fm.index_graph(g)
print(g.node_count, "nodes,", g.edge_count, "edges")

# star and pair cells seen from node a, with a 10 second window
res = fm.count_star_pair_at_center(idx, g.index_of("a"), 10)
print(res.star)
print(res.pair)

# triangle cells seen from node e
print(fm.count_triangles_at_center(idx, g.index_of("e"), 10))

# the full census: 36 classes keyed by their canonical signature
census = fm.count_motifs(g, 10)
for sig, n in census.counts.items():
    if n:
        label = fm.label_for_signature(sig)  # falls back to the signature itself
        print(f"{sig}  {label if label != sig else '':5s} {n}")
print("total", census.total())
