"""Command-line interface.

Subcommands: `count` runs one algorithm on an edge-list file and prints the
triangle total; `generate-pa` writes a preferential-attachment edge list;
`partition-stats` reports per-rank partition sizes; `bench` runs the
strong/weak/memory/idle suites and emits CSV. Exit codes: 0 ok, 1 usage
error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from .bench import (
    ALGOS,
    bench_idle,
    bench_memory,
    bench_strong,
    bench_weak,
    default_cost,
    pa_graph,
    pa_label,
    run_algo,
)
from .graph import build_graph, normalize
from .graph_io import (
    EdgeListParseError,
    PaParams,
    generate_pa,
    load_edge_list_path,
)
from .metrics import RunRecord, write_memory_csv, write_run_csv
from .partitioning import (
    CostKind,
    build_partition,
    partition_bytes_nonoverlapping,
    partition_bytes_overlapping_estimate,
    partition_ranges,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _parse_pa(text):
    parts = _int_list(text)
    if len(parts) not in (2, 3):
        raise UsageError(f"--pa expects N,D[,SEED], got {text!r}")
    return parts


def build_parser():
    p = _Parser(prog="tricount", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count triangles in an edge-list file")
    c.add_argument("--algo", choices=ALGOS, required=True)
    c.add_argument("--graph", required=True, help="edge-list file")
    c.add_argument("--ranks", type=int, default=None)
    c.add_argument("--cost", choices=[k.value for k in CostKind], default=None)
    c.add_argument("--backend", choices=["det", "par"], default="det")
    c.add_argument("--seed", type=int, default=0, help="scheduler seed (det backend)")
    c.add_argument("--static-only", action="store_true",
                   help="dynamic only: no task queue, initial tasks cover everything")
    c.add_argument("--metrics-out", default=None,
                   help="write per-rank metrics CSV to this file ('-' = stdout)")

    gp = sub.add_parser("generate-pa", help="write a preferential-attachment edge list")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--d", type=int, required=True, help="even target average degree")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--out", required=True, help="output file ('-' = stdout)")

    ps = sub.add_parser("partition-stats", help="per-rank partition size report")
    ps.add_argument("--graph", required=True)
    ps.add_argument("--ranks", type=int, required=True)
    ps.add_argument("--cost", choices=[k.value for k in CostKind], default="predsum")
    ps.add_argument("--out", default="-")

    b = sub.add_parser("bench", help="benchmark suites (CSV output)")
    b.add_argument("--suite", choices=["strong", "weak", "memory", "idle"], required=True)
    b.add_argument("--algo", choices=ALGOS, default="dynamic")
    b.add_argument("--graph", default=None, help="edge-list file input")
    b.add_argument("--pa", default=None, help="synthetic input N,D[,SEED]")
    b.add_argument("--ranks", type=int, default=None, help="memory/idle suites")
    b.add_argument("--ranks-list", default=None, help="strong/weak suites, e.g. 2,3,5,9")
    b.add_argument("--base-n", type=int, default=25000, help="weak suite nodes per rank")
    b.add_argument("--d", type=int, default=20, help="weak suite average degree")
    b.add_argument("--d-list", default=None, help="memory suite degrees, e.g. 10,20,50")
    b.add_argument("--n", type=int, default=100_000, help="memory suite node count")
    b.add_argument("--cost", choices=[k.value for k in CostKind], default=None)
    b.add_argument("--backend", choices=["det", "par"], default="par")
    b.add_argument("--repeats", type=int, default=5, help="idle suite repetitions")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default="-")
    return p


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load_graph(path):
    return build_graph(normalize(load_edge_list_path(path)))


def _cmd_count(args):
    algo = args.algo
    ranks = args.ranks
    if ranks is None:
        ranks = 1 if algo == "seq" else (2 if algo == "dynamic" else 1)
    if algo == "seq" and ranks != 1:
        raise UsageError("--algo seq runs on exactly one rank")
    if algo == "dynamic" and ranks < 2:
        raise UsageError("--algo dynamic needs --ranks >= 2 (coordinator + worker)")
    if args.static_only and algo != "dynamic":
        raise UsageError("--static-only only applies to --algo dynamic")
    if ranks < 1:
        raise UsageError("--ranks must be positive")
    cost = CostKind.parse(args.cost) if args.cost else default_cost(algo)
    g = _load_graph(args.graph)
    total, rr = run_algo(
        algo, g, ranks, cost, args.backend, args.seed, static_only=args.static_only
    )
    print(f"triangles,{total}")
    if args.metrics_out:
        rec = RunRecord.from_result(
            algo, ranks, cost.value, args.graph, args.seed, args.backend, total, rr,
            mode="static" if args.static_only else "normal",
        )
        with _open_out(args.metrics_out) as fh:
            write_run_csv([rec], fh)
    return 0


def _cmd_generate_pa(args):
    raw = generate_pa(PaParams(n=args.n, d=args.d, seed=args.seed))
    with _open_out(args.out) as fh:
        fh.write(f"# pa n={args.n} d={args.d} seed={args.seed}\n")
        for u, v in raw.edges:
            fh.write(f"{u} {v}\n")
    return 0


def _cmd_partition_stats(args):
    if args.ranks < 1:
        raise UsageError("--ranks must be positive")
    g = _load_graph(args.graph)
    cost = CostKind.parse(args.cost)
    ranges = partition_ranges(g, cost, args.ranks)
    with _open_out(args.out) as fh:
        fh.write("rank,core_len,edges,bytes_nonoverlap,bytes_overlap_estimate\n")
        for i, r in enumerate(ranges):
            part = build_partition(g, r, i)
            fh.write(
                f"{i},{r.count},{part.edge_count},"
                f"{partition_bytes_nonoverlapping(part)},"
                f"{partition_bytes_overlapping_estimate(g, r)}\n"
            )
    return 0


def _bench_input(args, need_graph=True):
    if args.graph and args.pa:
        raise UsageError("give either --graph or --pa, not both")
    if args.graph:
        return _load_graph(args.graph), args.graph
    if args.pa:
        parts = _parse_pa(args.pa)
        n, d = parts[0], parts[1]
        seed = parts[2] if len(parts) == 3 else args.seed
        return pa_graph(n, d, seed), pa_label(n, d, seed)
    if need_graph:
        raise UsageError("this suite needs --graph FILE or --pa N,D")
    return None, None


def _cmd_bench(args):
    if args.cost:
        cost = CostKind.parse(args.cost)
    elif args.suite == "memory":
        cost = CostKind.PRED_SUM  # partition sizing concerns the space schemes
    else:
        cost = default_cost(args.algo)
    if args.suite == "strong":
        ranks_list = _int_list(args.ranks_list) if args.ranks_list else [1, 2, 4]
        if args.algo == "dynamic" and min(ranks_list) < 2:
            raise UsageError("dynamic runs need every entry of --ranks-list >= 2")
        g, label = _bench_input(args)
        records = bench_strong(g, label, args.algo, ranks_list, cost,
                               args.backend, args.seed)
        with _open_out(args.out) as fh:
            write_run_csv(records, fh)
        return 0
    if args.suite == "weak":
        ranks_list = _int_list(args.ranks_list) if args.ranks_list else [2, 4, 8]
        if args.algo == "dynamic" and min(ranks_list) < 2:
            raise UsageError("dynamic runs need every entry of --ranks-list >= 2")
        records = bench_weak(args.base_n, args.d, args.algo, ranks_list, cost,
                             args.backend, args.seed)
        with _open_out(args.out) as fh:
            write_run_csv(records, fh)
        return 0
    if args.suite == "memory":
        d_list = _int_list(args.d_list) if args.d_list else list(range(10, 101, 10))
        ranks = args.ranks or 16
        rows = bench_memory(args.n, d_list, ranks, cost, args.seed)
        with _open_out(args.out) as fh:
            write_memory_csv(rows, fh)
        return 0
    if args.suite == "idle":
        ranks = args.ranks or 8
        if ranks < 2:
            raise UsageError("idle suite needs --ranks >= 2")
        g, label = _bench_input(args)
        records = bench_idle(g, label, ranks, cost, args.repeats,
                             args.backend, args.seed)
        with _open_out(args.out) as fh:
            write_run_csv(records, fh)
        return 0
    raise UsageError(f"unknown suite {args.suite!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "generate-pa":
            return _cmd_generate_pa(args)
        if args.command == "partition-stats":
            return _cmd_partition_stats(args)
        if args.command == "bench":
            return _cmd_bench(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return 1
    except (OSError, EdgeListParseError, ValueError, RuntimeError) as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
