"""Compiled per-center counting loops.

All kernels release the GIL so that worker threads can run them
concurrently over the shared, read-only index arrays.  Counters are int64
arrays owned by the caller and updated in place.  Direction codes: 0 = out,
1 = in; type codes: 0, 1, 2 for I, II, III.
"""
import numpy as np
from numba import njit

OUT = 0
IN = 1


@njit(nogil=True, cache=True)
def star_pair_center(ptr, seq_t, seq_other, seq_dir, u, delta, i_lo, i_hi,
                     m_in, m_out, star, pair):
    """Star and pair counting at center ``u`` for first edges ``i_lo:i_hi``.

    ``m_in``/``m_out`` are zeroed node-indexed scratch arrays; they hold the
    in/out edge counts per neighbor strictly between the first edge and the
    current third edge, and are left zeroed on return.
    """
    base = ptr[u]
    s = ptr[u + 1] - base
    if i_hi > s:
        i_hi = s
    for i in range(i_lo, i_hi):
        pi = base + i
        ti = seq_t[pi]
        v = seq_other[pi]
        di = seq_dir[pi]
        tot_in = 0
        tot_out = 0
        j = i + 1
        while j < s:
            pj = base + j
            if seq_t[pj] - ti > delta:
                break
            w = seq_other[pj]
            dj = seq_dir[pj]
            if w == v:
                pair[di, IN, dj] += m_in[v]
                pair[di, OUT, dj] += m_out[v]
                star[1, di, IN, dj] += tot_in - m_in[v]
                star[1, di, OUT, dj] += tot_out - m_out[v]
            else:
                star[0, di, IN, dj] += m_in[w]
                star[0, di, OUT, dj] += m_out[w]
                star[2, di, IN, dj] += m_in[v]
                star[2, di, OUT, dj] += m_out[v]
            if dj == IN:
                m_in[w] += 1
                tot_in += 1
            else:
                m_out[w] += 1
                tot_out += 1
            j += 1
        for k in range(base + i + 1, base + j):
            m_in[seq_other[k]] = 0
            m_out[seq_other[k]] = 0


@njit(nogil=True, cache=True)
def star_pair_nodes(ptr, seq_t, seq_other, seq_dir, nodes, delta, m_in, m_out, star, pair):
    """Full-range star and pair counting over a batch of centers."""
    for u in nodes:
        star_pair_center(ptr, seq_t, seq_other, seq_dir, u, delta, 0,
                         ptr[u + 1] - ptr[u], m_in, m_out, star, pair)


@njit(nogil=True, cache=True)
def _find_pair(keys, key):
    k = np.searchsorted(keys, key)
    if k < keys.shape[0] and keys[k] == key:
        return k
    return -1


@njit(nogil=True, cache=True)
def triangle_center(ptr, seq_t, seq_other, seq_dir, seq_rank,
                    pkeys, pptr, pt, prank, pdir, u, delta, i_lo, i_hi, live, tri):
    """Triangle counting at center ``u`` for first edges ``i_lo:i_hi``.

    For each edge pair ``(e_i, e_j)`` of ``S_u`` to distinct live neighbors
    ``v``, ``w`` within ``delta``, every ``v``-``w`` edge with timestamp in
    ``[t_j - delta, t_i + delta]`` closes a triangle; its type is its rank
    position relative to ``e_i`` and ``e_j``.
    """
    n = ptr.shape[0] - 1
    base = ptr[u]
    s = ptr[u + 1] - base
    if i_hi > s:
        i_hi = s
    for i in range(i_lo, i_hi):
        pi = base + i
        v = seq_other[pi]
        if live[v] == 0:
            continue
        ti = seq_t[pi]
        ri = seq_rank[pi]
        di = seq_dir[pi]
        for j in range(i + 1, s):
            pj = base + j
            tj = seq_t[pj]
            if tj - ti > delta:
                break
            w = seq_other[pj]
            if w == v or live[w] == 0:
                continue
            rj = seq_rank[pj]
            dj = seq_dir[pj]
            if v < w:
                k = _find_pair(pkeys, v * n + w)
                flip = 0
            else:
                k = _find_pair(pkeys, w * n + v)
                flip = 1
            if k < 0:
                continue
            a = pptr[k]
            b = pptr[k + 1]
            p = a + np.searchsorted(pt[a:b], tj - delta)
            while p < b:
                tk = pt[p]
                if tk - ti > delta:
                    break
                rk = prank[p]
                dk = pdir[p] ^ flip
                if rk < ri:
                    tri[0, di, dj, dk] += 1
                elif rk < rj:
                    tri[1, di, dj, dk] += 1
                else:
                    tri[2, di, dj, dk] += 1
                p += 1


@njit(nogil=True, cache=True)
def triangle_nodes(ptr, seq_t, seq_other, seq_dir, seq_rank,
                   pkeys, pptr, pt, prank, pdir, nodes, delta, live, tri):
    for u in nodes:
        triangle_center(ptr, seq_t, seq_other, seq_dir, seq_rank, pkeys, pptr, pt,
                        prank, pdir, u, delta, 0, ptr[u + 1] - ptr[u], live, tri)


@njit(nogil=True, cache=True)
def triangle_removal(ptr, seq_t, seq_other, seq_dir, seq_rank,
                     pkeys, pptr, pt, prank, pdir, delta, tri):
    """Centers in ascending order; each is retired once processed."""
    n = ptr.shape[0] - 1
    live = np.ones(n, np.uint8)
    for u in range(n):
        triangle_center(ptr, seq_t, seq_other, seq_dir, seq_rank, pkeys, pptr, pt,
                        prank, pdir, u, delta, 0, ptr[u + 1] - ptr[u], live, tri)
        live[u] = 0
