"""Per-node cost estimates, balanced consecutive-range splitting, and
partition construction/size accounting.

A partition owns the forward neighbor lists of one consecutive canonical-id
range, so the partitions are edge-disjoint and together cover every edge
exactly once. Byte figures use a fixed CSR cost model: WORD_BYTES per offset
(one per owned node, plus one) and per stored neighbor entry.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import Graph

WORD_BYTES = 8


class CostKind(enum.Enum):
    """Per-node work estimates f(v) used for balancing.

    UNIT and DEGREE are known without any counting work. SUCC_SUM charges a
    node for intersections against its own forward list; PRED_SUM charges it
    for intersections it actually performs under the non-overlapping scheme,
    i.e. over neighbors that precede it (one charge per edge either way, just
    attributed to different endpoints).
    """

    UNIT = "unit"
    DEGREE = "degree"
    SUCC_SUM = "succsum"
    PRED_SUM = "predsum"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(
                f"unknown cost function {name!r}; pick from "
                f"{[k.value for k in cls]}"
            ) from None


@dataclass(frozen=True)
class NodeRange:
    """A consecutive run of canonical node ids: [start, start + count)."""

    start: int
    count: int

    def __post_init__(self):
        if self.start < 0 or self.count < 0:
            raise ValueError(f"bad node range ({self.start}, {self.count})")

    @property
    def stop(self):
        return self.start + self.count


@dataclass(frozen=True)
class Partition:
    """One rank's share: the forward lists of its core node range."""

    rank: int
    core: NodeRange
    edge_count: int
    boundary: np.ndarray  # ids outside the core referenced by owned lists

    @property
    def node_count(self):
        # Owned nodes plus boundary nodes (the partition's full vertex set).
        return self.core.count + len(self.boundary)


def node_costs(g: Graph, kind: CostKind) -> np.ndarray:
    """Array of f(v) over all canonical nodes."""
    if kind == CostKind.UNIT:
        return np.ones(g.n, dtype=np.int64)
    if kind == CostKind.DEGREE:
        return g.deg.astype(np.int64)
    src = np.repeat(np.arange(g.n, dtype=np.int64), g.eff_deg)
    dst = g.eff_indices
    w = g.eff_deg[src] + g.eff_deg[dst]
    if kind == CostKind.SUCC_SUM:
        return np.bincount(src, weights=w, minlength=g.n).astype(np.int64)
    if kind == CostKind.PRED_SUM:
        return np.bincount(dst, weights=w, minlength=g.n).astype(np.int64)
    raise ValueError(f"unknown cost kind {kind!r}")


def balanced_ranges(costs, span: NodeRange, k: int) -> list[NodeRange]:
    """Split `span` into k consecutive ranges of roughly equal total cost.

    The j-th boundary is placed after the smallest index whose inclusive
    prefix sum reaches j/k of the span total (ties to the left), so every
    range's cost is at most total/k plus one node's cost. Ranges may be empty
    when k exceeds what the costs can fill. All-zero totals fall back to an
    equal-node split.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    costs = np.asarray(costs, dtype=np.int64)
    c = costs[span.start : span.stop]
    total = int(c.sum())
    if k == 1:
        return [span]
    if total == 0:
        cuts = span.start + (np.arange(1, k) * span.count) // k
    else:
        pref = np.cumsum(c)
        j = np.arange(1, k, dtype=np.int64)
        thresholds = -(-(j * total) // k)  # ceil(j * total / k)
        cuts = span.start + np.searchsorted(pref, thresholds, side="left") + 1
        cuts = np.minimum(cuts, span.stop)
    bounds = np.concatenate(([span.start], cuts, [span.stop]))
    return [
        NodeRange(int(bounds[i]), int(bounds[i + 1] - bounds[i])) for i in range(k)
    ]


def range_bounds(ranges) -> np.ndarray:
    """Boundary array b of length k+1 with range i = [b[i], b[i+1])."""
    bounds = np.empty(len(ranges) + 1, dtype=np.int64)
    for i, r in enumerate(ranges):
        bounds[i] = r.start
    bounds[-1] = ranges[-1].stop
    return bounds


def owner_of(bounds: np.ndarray, v) -> int:
    """Rank owning node v under the given boundary array."""
    return int(np.searchsorted(bounds, v, side="right")) - 1


def partition_ranges(g: Graph, kind: CostKind, k: int) -> list[NodeRange]:
    """Balanced core ranges over the whole node set."""
    return balanced_ranges(node_costs(g, kind), NodeRange(0, g.n), k)


def build_partition(g: Graph, core: NodeRange, rank: int) -> Partition:
    if core.stop > g.n:
        raise ValueError(f"core {core} exceeds node count {g.n}")
    lo = g.eff_indptr[core.start]
    hi = g.eff_indptr[core.stop]
    owned = g.eff_indices[lo:hi]
    outside = np.unique(owned)
    outside = outside[(outside < core.start) | (outside >= core.stop)]
    return Partition(rank=rank, core=core, edge_count=int(hi - lo), boundary=outside)


def partition_bytes_nonoverlapping(p: Partition) -> int:
    """CSR bytes to store the partition: one offset per core node plus one,
    plus one word per owned neighbor entry."""
    return WORD_BYTES * (p.core.count + 1 + p.edge_count)


def partition_bytes_overlapping_estimate(g: Graph, core: NodeRange) -> int:
    """Size the same core would occupy under the closure-based (overlapping)
    partitioning used by earlier distributed counters: the partition must hold
    every core node's full neighborhood, and the complete adjacency list of
    every node so pulled in. A single high-degree node anywhere in the closure
    drags in a list the size of its degree, which is what makes these
    partitions balloon on skewed graphs.
    """
    lo = g.full_indptr[core.start]
    hi = g.full_indptr[core.stop]
    closure = np.unique(
        np.concatenate(
            [
                np.arange(core.start, core.stop, dtype=np.int64),
                g.full_indices[lo:hi],
            ]
        )
    )
    return WORD_BYTES * (len(closure) + 1 + int(g.deg[closure].sum()))


def graph_bytes_full(g: Graph) -> int:
    """Whole-graph bytes under the same CSR model, full adjacency."""
    return WORD_BYTES * (g.n + 1 + 2 * g.m)


def graph_bytes_forward(g: Graph) -> int:
    """Whole-graph bytes under the same CSR model, forward lists only."""
    return WORD_BYTES * (g.n + 1 + g.m)
