"""
How work is split between workers
=================================

Heavy nodes get their edge sequence cut into shards; the rest go into
the queue in batches.  The census never depends on the split.
"""
import time

import fastmotif as fm

g = fm.generate_random_graph(2000, 200_000, 10**6, seed=1)
idx = fm.index_graph(g)

thr = fm.auto_degree_threshold(g)
plan = fm.plan_schedule(g, thr, shard_target=512)
print("auto threshold", thr, "->", len(plan.heavy), "heavy nodes,",
      plan.shard_count(), "shards,", len(plan.light), "light nodes")

# same counts whichever way the work is cut
reference = None
for workers in (1, 2, 4):
    for thr_d in (0, "auto", float("inf")):
        cfg = fm.RunConfig(10**4, workers=workers, thr_d=thr_d, shard_target=512)
        tick = time.perf_counter()
        census = fm.run_parallel(idx, cfg)
        elapsed = time.perf_counter() - tick
        reference = reference or census
        print(f"workers={workers} thr_d={thr_d!s:>4s} items={census.meta['work_items']:<5d}"
              f" {elapsed*1e3:7.1f}ms  same={census == reference}")

# per-phase timings are kept on the census
print(census.meta["timings_ms"])
