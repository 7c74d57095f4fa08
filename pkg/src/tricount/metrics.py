"""Run records and the CSV schemas emitted by the CLI and bench suites.

Column order is fixed; a header row is always written. Under the
deterministic backend the wall/busy/idle columns hold scheduler step counts
(integers), so identical flags produce byte-identical CSV output.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

from .runtime import RankMetrics, RunResult

RUN_COLUMNS = [
    "suite",
    "algo",
    "mode",
    "ranks",
    "cost",
    "graph",
    "seed",
    "backend",
    "status",
    "wall_time",
    "speedup",
    "rank",
    "triangles",
    "data_msgs_sent",
    "bytes_sent",
    "requests_sent",
    "tasks_executed",
    "busy_time",
    "idle_time",
    "partition_bytes",
]

MEMORY_COLUMNS = [
    "graph",
    "d",
    "ranks",
    "cost",
    "bytes_nonoverlap_max",
    "bytes_overlap_max",
    "ratio",
]


@dataclass
class RunRecord:
    algo: str
    ranks: int
    cost: str
    graph: str
    seed: int
    backend: str
    wall_time: float
    total: int
    rows: list[RankMetrics] = field(default_factory=list)
    suite: str = "count"
    mode: str = "normal"
    status: str = "ok"
    speedup: float | None = None
    error: str = ""

    @classmethod
    def from_result(cls, algo, ranks, cost, graph, seed, backend, total,
                    result: RunResult, suite="count", mode="normal"):
        return cls(
            algo=algo,
            ranks=ranks,
            cost=cost,
            graph=graph,
            seed=seed,
            backend=backend,
            wall_time=result.wall,
            total=total,
            rows=list(result.metrics),
            suite=suite,
            mode=mode,
        )

    def _fmt_time(self, value):
        if self.backend == "det":
            return str(int(value))
        return f"{value:.6f}"

    def csv_rows(self):
        head = [
            self.suite,
            self.algo,
            self.mode,
            str(self.ranks),
            self.cost,
            self.graph,
            str(self.seed),
            self.backend,
            self.status if not self.error else f"error:{self.error}",
            self._fmt_time(self.wall_time),
            "" if self.speedup is None else f"{self.speedup:.4f}",
        ]
        if not self.rows:
            yield head + [""] * (len(RUN_COLUMNS) - len(head))
            return
        for m in self.rows:
            yield head + [
                str(m.rank),
                str(m.triangles),
                str(m.data_msgs_sent),
                str(m.bytes_sent),
                str(m.requests_sent),
                str(m.tasks_executed),
                self._fmt_time(m.busy_time),
                self._fmt_time(m.idle_time),
                str(m.partition_bytes),
            ]


def write_run_csv(records, fh, header=True):
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(RUN_COLUMNS)
    for rec in records:
        for row in rec.csv_rows():
            w.writerow(row)


def write_memory_csv(rows, fh, header=True):
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(MEMORY_COLUMNS)
    for row in rows:
        w.writerow([str(row[c]) for c in MEMORY_COLUMNS])
