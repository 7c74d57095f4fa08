"""Sequential triangle counting and the brute-force oracle.

The fast path walks each node's forward (higher-ordered) neighbor list and
accumulates sorted-list intersection sizes; every triangle is seen exactly
once, at its lowest-ordered vertex. The brute-force counter enumerates vertex
triples over the dense full adjacency matrix and exists to validate everything
else, so it deliberately shares no code with the fast path.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .graph import Graph

BRUTE_MAX_NODES = 2000


def intersect_count(a, b) -> int:
    """Size of the intersection of two strictly ascending id lists."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if __debug__:
        assert a.size < 2 or bool(np.all(np.diff(a) > 0)), "first list not ascending"
        assert b.size < 2 or bool(np.all(np.diff(b) > 0)), "second list not ascending"
    return int(_kernels.intersect_size(a, b))


def count_triangles_seq(g: Graph) -> int:
    """Exact triangle count of g."""
    if g.n < 3:
        return 0
    return int(_kernels.count_node_range(g.eff_indptr, g.eff_indices, 0, g.n))


def count_triangles_brute(g: Graph) -> int:
    """Exact count by checking all triples u < v < w against the full
    adjacency matrix. Oracle only; refuses graphs beyond BRUTE_MAX_NODES."""
    if g.n > BRUTE_MAX_NODES:
        raise ValueError(f"brute-force counter limited to n <= {BRUTE_MAX_NODES}")
    if g.n < 3:
        return 0
    adj = np.zeros((g.n, g.n), dtype=bool)
    for v in range(g.n):
        adj[v, g.neighbors(v)] = True
    total = 0
    us, vs = np.nonzero(np.triu(adj, 1))
    for u, v in zip(us, vs):
        total += int(np.count_nonzero(adj[u, v + 1 :] & adj[v, v + 1 :]))
    return total
