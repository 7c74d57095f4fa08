"""Coordinator/worker counting with dynamically shrinking task sizes.

Assumes every rank can see the whole graph. Rank 0 is a dedicated coordinator
that only serves a queue of precomputed tasks; the other P-1 ranks are
workers. Half of the total estimated cost is split evenly into the workers'
initial tasks, which they pick up deterministically without any messages. The
remaining nodes are queued as tasks sized at (remaining cost)/(P-1), so each
queued task is a fixed fraction of whatever is left and sizes decay
geometrically down to single-node (atomic) tasks. Workers request a task,
receive either an assignment or a terminate message, and everyone meets at a
barrier before the final sum reduction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph
from .partitioning import CostKind, NodeRange, balanced_ranges, node_costs
from .runtime import (
    ProtocolError,
    Tag,
    assign_msg,
    request_msg,
    run,
    terminate_msg,
)


@dataclass(frozen=True)
class Task:
    """Counting work for t consecutive nodes starting at v; atomic at t=1."""

    v: int
    t: int

    def __post_init__(self):
        if self.t < 1 or self.v < 0:
            raise ValueError(f"bad task ({self.v}, {self.t})")


@dataclass(frozen=True)
class TaskPlan:
    """Initial half-assignment plus the coordinator's queue.

    `split` is the first node handled by the queue; `initial` tiles
    [0, split) across the P-1 workers; `queue` tiles [split, n). `targets`
    records the cost target each queued task was cut for (these decay by a
    factor of 1 - 1/(P-1) per assignment); actual task costs overshoot their
    target by less than one node's cost.
    """

    split: int
    initial: list[NodeRange]
    queue: list[Task]
    targets: np.ndarray
    total_cost: int


def task_cost(costs, task: Task) -> int:
    return int(np.asarray(costs)[task.v : task.v + task.t].sum())


def plan_tasks(costs, nranks: int) -> TaskPlan:
    """Deterministic task plan for P-1 workers over per-node costs.

    The split point is the smallest prefix holding at least half the total
    cost. Queue tasks take the shortest prefix of the unassigned suffix whose
    cost reaches (remaining cost)/(P-1), always at least one node, so the
    plan is finite and tiles the node set exactly.
    """
    if nranks < 2:
        raise ValueError("dynamic scheme needs a coordinator plus at least one worker")
    costs = np.asarray(costs, dtype=np.int64)
    if np.any(costs < 0):
        raise ValueError("costs must be non-negative")
    n = len(costs)
    workers = nranks - 1
    pref = np.cumsum(costs)
    total = int(pref[-1]) if n else 0
    if total == 0:
        split = 0
    else:
        split = int(np.searchsorted(pref, -(-total // 2), side="left")) + 1
    initial = balanced_ranges(costs, NodeRange(0, split), workers)
    queue: list[Task] = []
    targets: list[float] = []
    pos = split
    remaining = total - (int(pref[split - 1]) if split else 0)
    while pos < n:
        threshold = -(-remaining // workers) if remaining > 0 else 0
        base = int(pref[pos - 1]) if pos else 0
        q = int(np.searchsorted(pref, base + threshold, side="left"))
        q = min(max(q, pos), n - 1)
        queue.append(Task(pos, q - pos + 1))
        targets.append(remaining / workers)
        remaining -= int(pref[q]) - base
        pos = q + 1
    return TaskPlan(
        split=split,
        initial=initial,
        queue=queue,
        targets=np.asarray(targets, dtype=np.float64),
        total_cost=total,
    )


def count_task(g: Graph, task: Task) -> int:
    """Triangles charged to the task's node range."""
    if task.v + task.t > g.n:
        raise ValueError(f"task ({task.v}, {task.t}) exceeds node count {g.n}")
    return int(
        _kernels.count_node_range(g.eff_indptr, g.eff_indices, task.v, task.v + task.t)
    )


def _coordinator(ctx, queue):
    pending = deque(queue)
    met = ctx.metrics
    terminated = 0
    t0 = ctx.clock()
    while terminated < ctx.nranks - 1:
        msg = ctx.receive()
        if msg.tag != Tag.TASK_REQUEST:
            raise ProtocolError(f"coordinator got {msg.tag.name}, expected a request")
        if pending:
            task = pending.popleft()
            ctx.send(msg.src, assign_msg(ctx.rank, task.v, task.t))
        else:
            ctx.send(msg.src, terminate_msg(ctx.rank))
            terminated += 1
    met.idle_time += ctx.clock() - t0
    ctx.barrier()
    return ctx.reduce_sum(0)


def _worker(ctx, g, init_range):
    met = ctx.metrics
    indptr = g.eff_indptr
    indices = g.eff_indices
    total = 0
    if init_range.count:
        t0 = ctx.clock()
        total += int(
            _kernels.count_node_range(indptr, indices, init_range.start, init_range.stop)
        )
        met.busy_time += ctx.clock() - t0
        met.tasks_executed += 1
        met.task_log.append((init_range.start, init_range.count))
    while True:
        t0 = ctx.clock()
        ctx.send(0, request_msg(ctx.rank))
        msg = ctx.receive()
        met.idle_time += ctx.clock() - t0
        if msg.tag == Tag.TERMINATE:
            break
        if msg.tag != Tag.TASK_ASSIGN:
            raise ProtocolError(f"worker got {msg.tag.name}, expected a task")
        v, t = msg.payload
        t1 = ctx.clock()
        total += int(_kernels.count_node_range(indptr, indices, v, v + t))
        met.busy_time += ctx.clock() - t1
        met.tasks_executed += 1
        met.task_log.append((v, t))
    t2 = ctx.clock()
    ctx.barrier()
    met.idle_time += ctx.clock() - t2
    met.triangles = total
    return ctx.reduce_sum(total)


def count_dynamic(
    g: Graph,
    nranks: int,
    cost: CostKind = CostKind.DEGREE,
    *,
    backend="det",
    seed=0,
    static_only=False,
    trace=None,
):
    """Exact triangle count under coordinator/worker load balancing.

    Returns (total, RunResult). With static_only=True the initial tasks cover
    the whole node set and the queue is empty, turning the run into the
    static-partitioning baseline the idle-time comparison is made against.
    """
    if nranks < 2:
        raise ValueError("count_dynamic needs at least 2 ranks (coordinator + worker)")
    costs = node_costs(g, cost)
    if static_only:
        initial = balanced_ranges(costs, NodeRange(0, g.n), nranks - 1)
        queue: list[Task] = []
    else:
        plan = plan_tasks(costs, nranks)
        initial = plan.initial
        queue = plan.queue

    def program(ctx):
        if ctx.rank == 0:
            return _coordinator(ctx, queue)
        return _worker(ctx, g, initial[ctx.rank - 1])

    rr = run(nranks, program, backend=backend, seed=seed, trace=trace)
    return int(rr.results[0]), rr
