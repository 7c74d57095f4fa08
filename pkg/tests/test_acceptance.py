"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
line. Run with `pytest tests/test_acceptance.py -v -s`.

Two criteria gate themselves on the environment: the full-scale dataset totals
run only when the named edge-list files are present (TRICOUNT_DATASETS or
./datasets), and the wall-clock speedup check needs a >= 4-core host.
"""

import contextlib
import csv
import io
import math
import os
import time
from pathlib import Path

import numpy as np
import pytest

import tricount as tc
from tricount.cli import main as cli_main
from tricount.dynamic_lb import task_cost

from conftest import er_graph, pa_graph

COSTS = list(tc.CostKind)
SCHED_SEEDS = [0, 1, 2]


@contextlib.contextmanager
def report(num, name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num} ({name}): FAIL")
        raise
    print(f"ACCEPTANCE {num} ({name}): PASS")


def _graph_corpus(count_er=200, count_pa=100):
    rng = np.random.default_rng(20_240_001)
    graphs = []
    for i in range(count_er):
        n = int(rng.integers(4, 151))
        p = [0.05, 0.2, 0.5][i % 3]
        graphs.append(er_graph(n, p, int(rng.integers(0, 2**31))))
    for i in range(count_pa):
        n = int(np.exp(rng.uniform(math.log(50), math.log(2000))))
        d = [4, 10, 20][i % 3]
        n = max(n, d + 2)
        graphs.append(pa_graph(n, d, int(rng.integers(0, 2**31))))
    return graphs


def test_criterion_1_oracle_exactness():
    with report(1, "oracle exactness"):
        t0 = time.perf_counter()
        graphs = _graph_corpus()
        assert len(graphs) >= 300
        for k, g in enumerate(graphs):
            cost = COSTS[k % len(COSTS)]
            seed = SCHED_SEEDS[k % len(SCHED_SEEDS)]
            want = tc.count_triangles_brute(g)
            assert tc.count_triangles_seq(g) == want
            for nranks in (1, 2, 3, 5, 8):
                got, _ = tc.count_space_surrogate(g, nranks, cost, seed=seed)
                assert got == want, (k, "surrogate", nranks, cost, seed)
                got, _ = tc.count_space_direct(g, nranks, cost, seed=seed)
                assert got == want, (k, "direct", nranks, cost, seed)
                if nranks >= 2:
                    got, _ = tc.count_dynamic(g, nranks, cost, seed=seed)
                    assert got == want, (k, "dynamic", nranks, cost, seed)
        elapsed = time.perf_counter() - t0
        print(f"  [criterion 1: {len(graphs)} graphs in {elapsed:.1f}s]", end=" ")
        assert elapsed < 60.0


DATASETS = {
    # dataset key: (candidate file names, triangle total, display scale, decimals)
    "web-BerkStan": (["web-BerkStan.txt"], 65, 1e6, 0),
    "LiveJournal": (
        ["com-lj.ungraph.txt", "soc-LiveJournal1.txt", "LiveJournal.txt"],
        286, 1e6, 0,
    ),
    "Miami": (["miami.txt", "Miami.txt"], 332, 1e6, 0),
    "Twitter": (["twitter.txt", "twitter-2010.txt"], 34.8, 1e9, 1),
}


def _dataset_dir():
    env = os.environ.get("TRICOUNT_DATASETS")
    for cand in ([env] if env else []) + ["datasets", "data"]:
        if cand and Path(cand).is_dir():
            return Path(cand)
    return None


def test_criterion_2_full_scale_totals():
    root = _dataset_dir()
    found = {}
    if root is not None:
        for key, (names, want, scale, decimals) in DATASETS.items():
            for name in names:
                if (root / name).exists():
                    found[key] = (root / name, want, scale, decimals)
                    break
    if not found:
        pytest.skip("no local datasets (set TRICOUNT_DATASETS to enable)")
    with report(2, "full-scale dataset totals"):
        checked_distributed = False
        for key, (path, want, scale, decimals) in found.items():
            g = tc.build_graph(tc.normalize(tc.load_edge_list_path(path)))
            total = tc.count_triangles_seq(g)
            assert round(total / scale, decimals) == want, (key, total)
            if not checked_distributed and g.m < 100_000_000:
                got, _ = tc.count_space_surrogate(g, 4, backend="par")
                assert got == total, key
                checked_distributed = True


def test_criterion_3_surrogate_message_census():
    with report(3, "surrogate message census"):
        t0 = time.perf_counter()
        rng = np.random.default_rng(9)
        for k in range(50):
            if k % 5 == 4:
                g = pa_graph(int(rng.integers(60, 300)), 6, int(rng.integers(0, 1 << 30)))
            else:
                g = er_graph(int(rng.integers(20, 100)), [0.1, 0.3][k % 2],
                             int(rng.integers(0, 1 << 30)))
            for nranks in (2, 4, 8):
                bounds = tc.range_bounds(
                    tc.partition_ranges(g, tc.CostKind.PRED_SUM, nranks)
                )
                owners = np.searchsorted(bounds, np.arange(g.n), side="right") - 1
                want = np.zeros((nranks, nranks), dtype=np.int64)
                cross_pairs = 0
                single_list_redundancy = False
                for v in range(g.n):
                    i = int(owners[v])
                    hit = {}
                    for u in g.succ(v):
                        j = int(owners[int(u)])
                        if j != i:
                            hit[j] = hit.get(j, 0) + 1
                            cross_pairs += 1
                    for j, c in hit.items():
                        want[i, j] += 1
                        if c > 1:
                            single_list_redundancy = True
                _, rr = tc.count_space_surrogate(g, nranks)
                got = np.stack([m.data_msgs_to for m in rr.metrics])
                assert np.array_equal(got, want), (k, nranks)
                surr_total = int(got.sum())
                _, rd = tc.count_space_direct(g, nranks)
                direct_total = sum(m.data_msgs_sent for m in rd.metrics)
                assert direct_total == cross_pairs
                assert surr_total <= direct_total
                if single_list_redundancy:
                    assert surr_total < direct_total
        elapsed = time.perf_counter() - t0
        print(f"  [criterion 3: {elapsed:.1f}s]", end=" ")
        assert elapsed < 30.0


def test_criterion_4_memory_trend():
    with report(4, "memory trend"):
        t0 = time.perf_counter()
        ratios = {}
        for d in range(10, 101, 10):
            g = pa_graph(100_000, d, 1)
            ranges = tc.partition_ranges(g, tc.CostKind.PRED_SUM, 16)
            non_max = max(
                tc.partition_bytes_nonoverlapping(tc.build_partition(g, r, i))
                for i, r in enumerate(ranges)
            )
            over_max = max(
                tc.partition_bytes_overlapping_estimate(g, r) for r in ranges
            )
            assert non_max < over_max, d
            ratios[d] = over_max / non_max
        assert ratios[100] > ratios[10]
        # same data as the memory bench suite: the ratio never dips as the
        # average degree grows (deterministic for the fixed generator seed)
        seq = [ratios[d] for d in range(10, 101, 10)]
        assert all(b >= a for a, b in zip(seq, seq[1:]))
        elapsed = time.perf_counter() - t0
        print(
            f"  [criterion 4: ratio d=10 {ratios[10]:.2f} -> d=100 "
            f"{ratios[100]:.2f}, {elapsed:.1f}s]",
            end=" ",
        )
        assert elapsed < 120.0


def _replan_naive(costs, nranks):
    # independent straight-line re-derivation of the queue construction
    workers = nranks - 1
    total = sum(costs)
    acc = 0
    split = 0
    for v, c in enumerate(costs):
        acc += c
        if 2 * acc >= total:
            split = v + 1
            break
    else:
        split = 0 if total == 0 else len(costs)
    if total == 0:
        split = 0
    tasks = []
    pos = split
    remaining = sum(costs[split:])
    while pos < len(costs):
        target = remaining / workers
        acc = 0
        end = pos
        while end < len(costs):
            acc += costs[end]
            end += 1
            if acc >= target and acc > 0:
                break
        if end == pos:
            end = pos + 1
        tasks.append((pos, end - pos))
        remaining -= acc
        pos = end
    return split, tasks


def test_criterion_5_task_plan_invariants():
    with report(5, "task plan invariants"):
        t0 = time.perf_counter()
        rng = np.random.default_rng(5)
        cases = [(int(rng.integers(1, 100_001)), int(rng.integers(2, 65)))
                 for _ in range(12)]
        cases += [(100_000, 64), (100_000, 2), (1, 64), (50, 3)]
        for n, nranks in cases:
            costs = rng.integers(0, 100, size=n).astype(np.int64)
            plan = tc.plan_tasks(costs, nranks)
            workers = nranks - 1
            total = int(costs.sum())
            fmax = int(costs.max()) if n else 0
            # tiling of [0, n)
            covered = 0
            for r in plan.initial:
                assert r.start == covered
                covered = r.stop
            assert covered == plan.split
            for t in plan.queue:
                assert t.v == covered
                covered += t.t
            assert covered == n
            # split prefix within one node cost of half the total
            before = int(costs[: plan.split].sum())
            assert before >= total / 2 or plan.split == n
            assert before - total / 2 <= fmax
            # queue sizes (the size schedule of the shrinking-task rule)
            # are non-increasing
            assert all(
                b <= a + 1e-9 for a, b in zip(plan.targets, plan.targets[1:])
            )
            # first queued task within one node cost of its target
            if plan.queue:
                tail_total = total - before
                want = tail_total / workers
                got = task_cost(costs, plan.queue[0])
                assert abs(got - want) <= fmax
            # the whole queue matches an independent re-derivation of the rule
            split2, tasks2 = _replan_naive(costs.tolist(), nranks)
            assert plan.split == split2
            assert [(t.v, t.t) for t in plan.queue] == tasks2
        # unit costs: actual task sizes themselves are non-increasing
        plan = tc.plan_tasks(np.ones(10_000, dtype=np.int64), 9)
        sizes = [t.t for t in plan.queue]
        assert all(b <= a for a, b in zip(sizes, sizes[1:]))
        elapsed = time.perf_counter() - t0
        print(f"  [criterion 5: {elapsed:.1f}s]", end=" ")
        assert elapsed < 10.0


def test_criterion_6_idle_time_reduction():
    with report(6, "idle-time reduction"):
        g = pa_graph(100_000, 50, 3)
        wins = 0
        for rep in range(5):
            fractions = {}
            for mode, static in (("dynamic", False), ("static", True)):
                _, rr = tc.count_dynamic(
                    g, 8, tc.CostKind.DEGREE, backend="par", static_only=static
                )
                fractions[mode] = max(
                    m.idle_time / rr.wall for m in rr.metrics[1:]
                )
            if fractions["dynamic"] < fractions["static"]:
                wins += 1
        print(f"  [criterion 6: dynamic beat static in {wins}/5 runs]", end=" ")
        assert wins >= 4


@pytest.mark.skipif(os.cpu_count() < 4, reason="needs a >= 4-core host")
def test_criterion_7_strong_scaling_sanity():
    with report(7, "strong-scaling sanity"):
        g = pa_graph(1_000_000, 20, 1)

        def best_speedup(run_small, run_big, tries=3):
            best = 0.0
            for _ in range(tries):
                t0 = time.perf_counter()
                base_total = run_small()
                base = time.perf_counter() - t0
                t0 = time.perf_counter()
                big_total = run_big()
                wide = time.perf_counter() - t0
                assert base_total == big_total
                best = max(best, base / wide)
            return best

        dyn = best_speedup(
            lambda: tc.count_dynamic(g, 2, backend="par")[0],
            lambda: tc.count_dynamic(g, 5, backend="par")[0],
        )
        assert dyn >= 2.0, f"dynamic 4-worker speedup {dyn:.2f}"
        surr = best_speedup(
            lambda: tc.count_space_surrogate(g, 1, backend="par")[0],
            lambda: tc.count_space_surrogate(g, 4, backend="par")[0],
        )
        assert surr >= 1.6, f"surrogate P=4 speedup {surr:.2f}"
        print(f"  [criterion 7: dynamic {dyn:.2f}x, surrogate {surr:.2f}x]", end=" ")


def test_criterion_8_determinism(tmp_path, capsys):
    with report(8, "deterministic metrics"):
        pa_file = tmp_path / "pa.txt"
        assert cli_main(
            ["generate-pa", "--n", "2000", "--d", "10", "--seed", "4",
             "--out", str(pa_file)]
        ) == 0
        blobs = []
        for name in ("r1.csv", "r2.csv"):
            out = tmp_path / name
            code = cli_main(
                ["count", "--algo", "space-surrogate", "--graph", str(pa_file),
                 "--ranks", "5", "--backend", "det", "--seed", "7",
                 "--metrics-out", str(out)]
            )
            assert code == 0
            blobs.append(out.read_bytes())
        capsys.readouterr()
        assert blobs[0] == blobs[1]
        # ... and the dynamic algorithm through the bench path
        blobs = []
        for name in ("b1.csv", "b2.csv"):
            out = tmp_path / name
            code = cli_main(
                ["bench", "--suite", "strong", "--algo", "dynamic",
                 "--graph", str(pa_file), "--ranks-list", "2,3,5",
                 "--backend", "det", "--seed", "2", "--out", str(out)]
            )
            assert code == 0
            rows = list(csv.DictReader(io.StringIO(out.read_text())))
            # drop the columns that intentionally vary (seq runs on the host
            # clock; speedup is derived from it)
            for r in rows:
                r.pop("speedup")
                stable = r if r["algo"] != "seq" else None
            blobs.append(
                [tuple(r.items()) for r in rows if r["algo"] != "seq"]
            )
        assert blobs[0] == blobs[1]
