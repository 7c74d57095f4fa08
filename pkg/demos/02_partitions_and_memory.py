"""Partitioning and the memory story.

Balanced consecutive-range partitions keep every edge in exactly one
partition, so the pieces sum to the graph. Closure-based (overlapping)
partitions must also hold the full lists of every referenced neighbor, which
balloons as the average degree grows. This prints a small version of that
comparison on skewed preferential-attachment graphs.
"""

import tricount as tc
from tricount.bench import pa_graph

RANKS = 8

g = pa_graph(30_000, 20, seed=1)
print(f"graph: n={g.n} m={g.m} max degree={int(g.deg.max())}")
print()

costs = {kind: tc.node_costs(g, kind) for kind in tc.CostKind}
print("cost function totals (work estimate each one balances):")
for kind, c in costs.items():
    print(f"  {kind.value:>8}: total={int(c.sum())}")
print()

ranges = tc.partition_ranges(g, tc.CostKind.PRED_SUM, RANKS)
print(f"{RANKS} ranges balanced by the predecessor-sum estimate:")
print("rank  nodes   edges   est.cost  bytes")
edge_sum = 0
for i, r in enumerate(ranges):
    part = tc.build_partition(g, r, i)
    est = int(costs[tc.CostKind.PRED_SUM][r.start : r.stop].sum())
    print(
        f"{i:>4}  {r.count:>6}  {part.edge_count:>6}  {est:>8}  "
        f"{tc.partition_bytes_nonoverlapping(part):>8}"
    )
    edge_sum += part.edge_count
print(f"edges across partitions: {edge_sum} (== m: {g.m})")
print()

print("largest-partition bytes as the average degree grows (16 partitions):")
print("   d   non-overlapping   overlapping-est   ratio")
for d in (10, 20, 40, 80):
    gd = pa_graph(30_000, d, seed=1)
    rs = tc.partition_ranges(gd, tc.CostKind.PRED_SUM, 16)
    non = max(
        tc.partition_bytes_nonoverlapping(tc.build_partition(gd, r, i))
        for i, r in enumerate(rs)
    )
    over = max(tc.partition_bytes_overlapping_estimate(gd, r) for r in rs)
    print(f"{d:>4}   {non:>15}   {over:>15}   {over / non:>5.2f}")

print()
print("one high-degree node is enough to blow up a closure-based partition:")
star = tc.build_graph(tc.normalize(tc.RawGraph.from_pairs([(0, i) for i in range(1, 2000)])))
leaf = tc.NodeRange(0, 1)
print("  core = a single leaf of a 2000-node star")
print("  non-overlapping bytes:", tc.partition_bytes_nonoverlapping(tc.build_partition(star, leaf, 0)))
print("  overlapping estimate: ", tc.partition_bytes_overlapping_estimate(star, leaf))
print("  whole star:           ", tc.graph_bytes_full(star))
