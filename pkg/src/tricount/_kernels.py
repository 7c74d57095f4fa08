"""Compiled inner loops shared by the counting algorithms.

Everything here operates on CSR adjacency (indptr/indices int64 pairs) so the
same kernels serve the sequential count, per-task counting, and the
per-partition scan of the distributed algorithms. All kernels release the GIL
so the thread-parallel backend gets real concurrency.
"""

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT, inline="always")
def merge_count(a, a0, a1, b, b0, b1):
    # |a[a0:a1] ∩ b[b0:b1]| by linear merge; both slices strictly ascending.
    c = 0
    i = a0
    j = b0
    while i < a1 and j < b1:
        x = a[i]
        y = b[j]
        if x == y:
            c += 1
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return c


@njit(**_JIT)
def intersect_size(a, b):
    return merge_count(a, 0, len(a), b, 0, len(b))


@njit(**_JIT)
def count_node_range(indptr, indices, start, stop):
    # Triangles charged to nodes in [start, stop): sum over v, u in adj(v) of
    # |adj(v) ∩ adj(u)|. Exact when `indices` holds the higher-ordered
    # (orientation-forward) neighbor lists.
    total = np.int64(0)
    for v in range(start, stop):
        s0 = indptr[v]
        s1 = indptr[v + 1]
        for k in range(s0, s1):
            u = indices[k]
            total += merge_count(indices, s0, s1, indices, indptr[u], indptr[u + 1])
    return total


@njit(**_JIT)
def count_local_pairs(indptr, indices, v, lo, hi):
    # Like one outer iteration of count_node_range but restricted to
    # neighbors u of v with lo <= u < hi.
    s0 = indptr[v]
    s1 = indptr[v + 1]
    total = np.int64(0)
    k = s0 + np.searchsorted(indices[s0:s1], lo)
    while k < s1 and indices[k] < hi:
        u = indices[k]
        total += merge_count(indices, s0, s1, indices, indptr[u], indptr[u + 1])
        k += 1
    return total


@njit(**_JIT)
def surrogate_count_list(indptr, indices, lo, hi, x):
    # Received neighbor list x (ascending): for every u in x owned by this
    # rank (lo <= u < hi), add |adj(u) ∩ x|.
    total = np.int64(0)
    k = np.searchsorted(x, lo)
    while k < len(x) and x[k] < hi:
        u = x[k]
        total += merge_count(indices, indptr[u], indptr[u + 1], x, 0, len(x))
        k += 1
    return total


@njit(**_JIT)
def surrogate_count_nodes(indptr, indices, lo, hi, nodes):
    # Bundled form: each entry of `nodes` stands for one logical data message
    # carrying that node's neighbor list.
    total = np.int64(0)
    for i in range(len(nodes)):
        v = nodes[i]
        total += surrogate_count_list(indptr, indices, lo, hi, indices[indptr[v] : indptr[v + 1]])
    return total


@njit(**_JIT)
def scan_for_surrogate(indptr, indices, bounds, rank, v_start, v_stop, out_dest, out_node):
    """Scan owned nodes [v_start, v_stop).

    Counts pairs whose second endpoint is owned locally, and records one
    (node, destination) record per remote partition touched by each neighbor
    list. Deduplication uses a single last-destination variable, which is
    sufficient because neighbor lists are ascending and partitions are
    consecutive id ranges, so equal destinations appear in one contiguous run.
    Returns (local_triangles, records_written).
    """
    total = np.int64(0)
    nmsg = 0
    lo = bounds[rank]
    hi = bounds[rank + 1]
    for v in range(v_start, v_stop):
        s0 = indptr[v]
        s1 = indptr[v + 1]
        last = -1
        seg = 0
        for k in range(s0, s1):
            u = indices[k]
            if lo <= u < hi:
                total += merge_count(indices, s0, s1, indices, indptr[u], indptr[u + 1])
            else:
                while bounds[seg + 1] <= u:
                    seg += 1
                if seg != last:
                    out_dest[nmsg] = seg
                    out_node[nmsg] = v
                    nmsg += 1
                    last = seg
    return total, nmsg


@njit(cache=True)
def pa_edge_list(n, k, seed):
    """Preferential-attachment edge list: seed clique on k+1 nodes, then each
    new node attaches k edges to existing nodes chosen proportionally to
    current degree (uniform pick from the edge-endpoint multiset), resampling
    duplicate targets. Driven by splitmix64 so output is identical across
    platforms for a given seed.
    """
    m_clique = k * (k + 1) // 2
    m = m_clique + (n - k - 1) * k
    src = np.empty(m, np.int64)
    dst = np.empty(m, np.int64)
    rep = np.empty(2 * m, np.int64)  # one entry per edge endpoint
    e = 0
    r = 0
    for a in range(k + 1):
        for b in range(a + 1, k + 1):
            src[e] = a
            dst[e] = b
            e += 1
            rep[r] = a
            rep[r + 1] = b
            r += 2
    state = np.uint64(seed)
    picks = np.empty(k, np.int64)
    for v in range(k + 1, n):
        for t in range(k):
            while True:
                state += np.uint64(0x9E3779B97F4A7C15)
                z = state
                z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
                z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
                z = z ^ (z >> np.uint64(31))
                cand = rep[z % np.uint64(r)]
                fresh = True
                for q in range(t):
                    if picks[q] == cand:
                        fresh = False
                        break
                if fresh:
                    break
            picks[t] = cand
        for t in range(k):
            src[e] = picks[t]
            dst[e] = v
            e += 1
            rep[r] = v
            rep[r + 1] = picks[t]
            r += 2
    return src, dst
