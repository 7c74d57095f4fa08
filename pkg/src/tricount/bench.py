"""Benchmark suites: strong/weak scaling, partition-memory comparison, and
the dynamic-vs-static idle-time experiment."""

from __future__ import annotations

import time

from .dynamic_lb import count_dynamic
from .graph import Graph, build_graph, normalize
from .graph_io import PaParams, generate_pa
from .metrics import RunRecord
from .partitioning import (
    CostKind,
    graph_bytes_forward,
    partition_bytes_nonoverlapping,
    partition_bytes_overlapping_estimate,
    partition_ranges,
    build_partition,
)
from .runtime import RankMetrics, RunResult
from .sequential import count_triangles_seq
from .space_efficient import count_space_direct, count_space_surrogate

ALGOS = ("seq", "space-direct", "space-surrogate", "dynamic")


def default_cost(algo) -> CostKind:
    return CostKind.DEGREE if algo == "dynamic" else CostKind.PRED_SUM


def pa_graph(n, d, seed) -> Graph:
    return build_graph(normalize(generate_pa(PaParams(n=n, d=d, seed=seed))))


def pa_label(n, d, seed):
    return f"pa({n},{d},{seed})"


def run_algo(algo, g, ranks, cost: CostKind, backend, seed, static_only=False):
    """Dispatch one counting run; returns (total, RunResult)."""
    if algo == "seq":
        t0 = time.perf_counter()
        total = count_triangles_seq(g)
        wall = time.perf_counter() - t0
        m = RankMetrics(rank=0, nranks=1)
        m.triangles = total
        m.busy_time = wall
        m.partition_bytes = graph_bytes_forward(g)
        return total, RunResult(results=[total], metrics=[m], wall=wall)
    if algo == "space-surrogate":
        return count_space_surrogate(g, ranks, cost, backend=backend, seed=seed)
    if algo == "space-direct":
        return count_space_direct(g, ranks, cost, backend=backend, seed=seed)
    if algo == "dynamic":
        return count_dynamic(
            g, ranks, cost, backend=backend, seed=seed, static_only=static_only
        )
    raise ValueError(f"unknown algorithm {algo!r}")


def _record(algo, g, label, ranks, cost, backend, seed, suite, mode="normal",
            static_only=False):
    try:
        total, rr = run_algo(algo, g, ranks, cost, backend, seed, static_only)
    except Exception as exc:  # noqa: BLE001 - reported as a status row
        rec = RunRecord(
            algo=algo, ranks=ranks, cost=cost.value, graph=label, seed=seed,
            backend=backend, wall_time=0.0, total=0, suite=suite, mode=mode,
        )
        rec.status = "error"
        rec.error = str(exc)
        return rec
    return RunRecord.from_result(
        algo, ranks, cost.value, label, seed, backend, total, rr,
        suite=suite, mode=mode,
    )


def bench_strong(g, label, algo, ranks_list, cost, backend, seed):
    """One seq baseline plus the algorithm at each rank count; speedup is
    measured against the seq wall time."""
    records = [_record("seq", g, label, 1, cost, backend, seed, "strong")]
    base_wall = records[0].wall_time
    for ranks in ranks_list:
        rec = _record(algo, g, label, ranks, cost, backend, seed, "strong")
        if rec.status == "ok" and rec.wall_time > 0:
            rec.speedup = base_wall / rec.wall_time
        records.append(rec)
    return records


def bench_weak(base_n, d, algo, ranks_list, cost, backend, seed):
    """Problem size grows with the rank count: PA(P * base_n, d)."""
    records = []
    for ranks in ranks_list:
        n = ranks * base_n
        g = pa_graph(n, d, seed)
        records.append(
            _record(algo, g, pa_label(n, d, seed), ranks, cost, backend, seed, "weak")
        )
    return records


def bench_memory(n, d_list, ranks, cost, seed):
    """Largest-partition bytes, non-overlapping vs closure-based overlapping
    estimate, on PA(n, d) across average degrees."""
    rows = []
    for d in d_list:
        g = pa_graph(n, d, seed)
        ranges = partition_ranges(g, cost, ranks)
        non_max = max(
            partition_bytes_nonoverlapping(build_partition(g, r, i))
            for i, r in enumerate(ranges)
        )
        over_max = max(
            partition_bytes_overlapping_estimate(g, r) for r in ranges
        )
        rows.append(
            {
                "graph": pa_label(n, d, seed),
                "d": d,
                "ranks": ranks,
                "cost": cost.value,
                "bytes_nonoverlap_max": non_max,
                "bytes_overlap_max": over_max,
                "ratio": f"{over_max / non_max:.4f}",
            }
        )
    return rows


def bench_idle(g, label, ranks, cost, repeats, backend, seed):
    """Repeated dynamic vs static-only runs; idle columns carry the story."""
    records = []
    for rep in range(repeats):
        records.append(
            _record("dynamic", g, label, ranks, cost, backend, seed + rep, "idle")
        )
        records.append(
            _record(
                "dynamic", g, label, ranks, cost, backend, seed + rep, "idle",
                mode="static", static_only=True,
            )
        )
    return records
