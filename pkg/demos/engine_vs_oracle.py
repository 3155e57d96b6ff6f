"""
Fast counters against brute force
=================================

The oracle enumerates every edge triple inside the window.  It is slow
but obviously right; the fast engine has to agree with it exactly.
"""
import time

import numpy as np
import fastmotif as fm

rng = np.random.default_rng(7)
for trial in range(5):
    g = fm.generate_random_graph(int(rng.integers(5, 40)), int(rng.integers(50, 400)),
                                 1000, seed=trial)
    for delta in (5, 50, 500):
        tick = time.perf_counter()
        fast = fm.count_motifs(g, delta)
        t_fast = time.perf_counter() - tick
        tick = time.perf_counter()
        slow = fm.oracle_census(g, delta)
        t_slow = time.perf_counter() - tick
        print(f"{g.name:>24s} delta={delta:<4d} instances={fast.total():<8d}"
              f" equal={fast == slow}  fast {t_fast*1e3:.1f}ms  oracle {t_slow*1e3:.1f}ms")

# a mismatch would show up here, class by class
print(fast.diff(slow))
