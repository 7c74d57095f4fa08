"""Message-passing substrate standing in for MPI.

P ranks run the same program against a small messaging API: non-blocking
buffered sends with per-(src, dst) FIFO delivery, polling and blocking
receives, broadcast as P-1 point-to-point sends, plus barrier and sum
reduction. Two interchangeable backends provide it:

* "det": all ranks in one OS thread, cooperatively scheduled by round-robin
  over a seed-permuted rank order, with sends delivered at turn boundaries.
  Identical flags give byte-identical behavior, including metrics, which
  report scheduler steps instead of seconds.
* "par": one thread per rank. Counting kernels release the GIL, so ranks
  genuinely run in parallel on multi-core hosts.

Senders never block (buffering is unbounded) and try_receive never blocks;
poll-as-you-scan protocol loops therefore cannot deadlock the transport.
"""

from __future__ import annotations

import random
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Callable

import numpy as np
from greenlet import GreenletExit, greenlet

WORD_BYTES = 8  # wire cost model: every message is header + payload words


class Tag(IntEnum):
    DATA = 0
    COMPLETION = 1
    TASK_REQUEST = 2
    TASK_ASSIGN = 3
    TERMINATE = 4


class ProtocolError(RuntimeError):
    """Messaging-contract violation: deadlock, mismatched collectives, or
    undelivered messages at exit."""


class RankFailure(RuntimeError):
    def __init__(self, rank, cause):
        super().__init__(f"rank {rank} failed: {cause!r}")
        self.rank = rank
        self.cause = cause


class _Aborted(BaseException):
    # internal: unblocks parallel ranks after another rank failed
    pass


@dataclass(frozen=True, slots=True)
class Message:
    """Tagged protocol unit.

    DATA carries one node's ascending neighbor list (node >= 0, payload is
    the list), or a bundle of `count` logical data messages identified by
    their source node ids (node == -1, payload is the id array; receivers
    read the shared graph's lists). TASK_ASSIGN carries (v, t); TASK_REQUEST
    may carry a node id when used to ask for that node's list. `words` is the
    wire size used for byte accounting.
    """

    tag: Tag
    src: int
    node: int = -1
    payload: Any = None
    count: int = 1
    words: int = 1


def data_msg(src, node, neighbors) -> Message:
    return Message(Tag.DATA, src, node, neighbors, 1, 2 + len(neighbors))


def data_bundle(src, nodes, list_words) -> Message:
    # words: per logical message, one header word + one node id + its list
    return Message(Tag.DATA, src, -1, nodes, len(nodes), 2 * len(nodes) + int(list_words))


def completion_msg(src) -> Message:
    return Message(Tag.COMPLETION, src)


def request_msg(src, node=-1) -> Message:
    return Message(Tag.TASK_REQUEST, src, node, words=2)


def assign_msg(src, v, t) -> Message:
    return Message(Tag.TASK_ASSIGN, src, payload=(v, t), words=3)


def terminate_msg(src) -> Message:
    return Message(Tag.TERMINATE, src)


@dataclass
class RankMetrics:
    rank: int
    nranks: int
    triangles: int = 0
    data_msgs_sent: int = 0
    bytes_sent: int = 0
    requests_sent: int = 0
    completion_msgs_sent: int = 0
    tasks_executed: int = 0
    idle_poll_cycles: int = 0
    busy_time: float = 0.0
    idle_time: float = 0.0
    partition_bytes: int = 0
    data_msgs_to: np.ndarray = None
    requests_to: np.ndarray = None
    task_log: list = field(default_factory=list)

    def __post_init__(self):
        if self.data_msgs_to is None:
            self.data_msgs_to = np.zeros(self.nranks, dtype=np.int64)
        if self.requests_to is None:
            self.requests_to = np.zeros(self.nranks, dtype=np.int64)


class RankContext:
    """Per-rank endpoint handed to the rank program."""

    def __init__(self, rank, nranks):
        self.rank = rank
        self.nranks = nranks
        self.metrics = RankMetrics(rank=rank, nranks=nranks)

    # -- accounting shared by both backends ------------------------------
    def _account_send(self, dst, msg: Message):
        m = self.metrics
        m.bytes_sent += msg.words * WORD_BYTES
        if msg.tag == Tag.DATA:
            m.data_msgs_sent += msg.count
            m.data_msgs_to[dst] += msg.count
        elif msg.tag == Tag.TASK_REQUEST:
            m.requests_sent += 1
            m.requests_to[dst] += 1
        elif msg.tag == Tag.COMPLETION:
            m.completion_msgs_sent += 1

    def _check_dst(self, dst):
        if dst == self.rank:
            raise ValueError(f"rank {self.rank}: self-send is disallowed")
        if not 0 <= dst < self.nranks:
            raise ValueError(f"rank {self.rank}: invalid destination {dst}")

    def broadcast(self, msg: Message):
        for dst in range(self.nranks):
            if dst != self.rank:
                self.send(dst, msg)

    # -- backend API ------------------------------------------------------
    def send(self, dst, msg: Message):
        raise NotImplementedError

    def try_receive(self):
        raise NotImplementedError

    def receive(self):
        raise NotImplementedError

    def barrier(self):
        raise NotImplementedError

    def reduce_sum(self, value):
        raise NotImplementedError

    def clock(self):
        raise NotImplementedError


@dataclass
class RunResult:
    results: list
    metrics: list[RankMetrics]
    wall: float  # seconds under "par", scheduler steps under "det"


# ---------------------------------------------------------------------------
# Deterministic backend
# ---------------------------------------------------------------------------

_RUNNABLE, _RECV_WAIT, _COLLECTIVE, _DONE = range(4)


class _DetContext(RankContext):
    def __init__(self, sched, rank):
        super().__init__(rank, sched.nranks)
        self._sched = sched

    def _turn_over(self):
        self._sched.main.switch()

    def send(self, dst, msg):
        self._check_dst(dst)
        self._account_send(dst, msg)
        sched = self._sched
        if sched.trace is not None:
            sched.trace.append(
                (sched.steps, "send", self.rank, dst, int(msg.tag), msg.node, msg.count)
            )
        sched.staged.append((dst, msg))

    def try_receive(self):
        # Yields the turn only when the inbox is empty: a drain loop consumes
        # everything already delivered to it, then lets the other ranks run.
        sched = self._sched
        inbox = sched.inbox[self.rank]
        if not inbox:
            self.metrics.idle_poll_cycles += 1
            self._turn_over()
            return None
        msg = inbox.popleft()
        if sched.trace is not None:
            sched.trace.append(
                (sched.steps, "recv", self.rank, msg.src, int(msg.tag), msg.node, msg.count)
            )
        return msg

    def receive(self):
        sched = self._sched
        inbox = sched.inbox[self.rank]
        while not inbox:
            sched.state[self.rank] = _RECV_WAIT
            self._turn_over()
        sched.state[self.rank] = _RUNNABLE
        msg = inbox.popleft()
        if sched.trace is not None:
            sched.trace.append(
                (sched.steps, "recv", self.rank, msg.src, int(msg.tag), msg.node, msg.count)
            )
        return msg

    def _collective(self, kind, value):
        sched = self._sched
        sched.coll_kind[self.rank] = kind
        sched.coll_value[self.rank] = value
        sched.state[self.rank] = _COLLECTIVE
        sched.coll_waiting += 1
        self._turn_over()
        result = sched.coll_result[self.rank]
        sched.coll_result[self.rank] = None
        return result

    def barrier(self):
        self._collective("barrier", None)

    def reduce_sum(self, value):
        return self._collective("reduce", int(value))

    def clock(self):
        return float(self._sched.steps)


class _DetScheduler:
    def __init__(self, nranks, seed, trace):
        self.nranks = nranks
        order = list(range(nranks))
        if seed:
            random.Random(seed).shuffle(order)
        self.order = order
        self.inbox = [deque() for _ in range(nranks)]
        self.staged = []
        self.state = [_RUNNABLE] * nranks
        self.steps = 0
        self.coll_kind = [None] * nranks
        self.coll_value = [None] * nranks
        self.coll_result = [None] * nranks
        self.coll_waiting = 0
        self.trace = trace
        self.failure = None
        self.results = [None] * nranks
        self.done = 0

    def _entry(self, ctx, program):
        try:
            self.results[ctx.rank] = program(ctx)
        except GreenletExit:  # scheduler teardown after another rank failed
            raise
        except BaseException as exc:  # noqa: BLE001 - reported as RankFailure
            self.failure = (ctx.rank, exc)
        finally:
            self.state[ctx.rank] = _DONE
            self.done += 1

    def _release_collective(self):
        kinds = set(self.coll_kind)
        if len(kinds) != 1:
            raise ProtocolError(f"mismatched collective calls: {self.coll_kind}")
        if kinds == {"reduce"}:
            self.coll_result[0] = sum(self.coll_value)
        for i in range(self.nranks):
            self.state[i] = _RUNNABLE
            self.coll_kind[i] = None
            self.coll_value[i] = None
        self.coll_waiting = 0

    def run(self, program):
        self.main = greenlet.getcurrent()
        ctxs = [_DetContext(self, r) for r in range(self.nranks)]
        glets = [
            greenlet(lambda c=ctxs[r]: self._entry(c, program))
            for r in range(self.nranks)
        ]
        while self.done < self.nranks:
            progressed = False
            for r in self.order:
                st = self.state[r]
                if st == _DONE or st == _COLLECTIVE:
                    continue
                if st == _RECV_WAIT and not self.inbox[r]:
                    continue
                self.steps += 1
                glets[r].switch()
                if self.failure is not None:
                    rank, exc = self.failure
                    raise RankFailure(rank, exc) from exc
                if self.staged:
                    for dst, msg in self.staged:
                        self.inbox[dst].append(msg)
                    self.staged.clear()
                if self.coll_waiting == self.nranks:
                    self._release_collective()
                progressed = True
            if not progressed and self.done < self.nranks:
                states = {r: self.state[r] for r in range(self.nranks)}
                raise ProtocolError(
                    f"no runnable rank (deadlock): states={states}, "
                    f"pending={[len(q) for q in self.inbox]}"
                )
        leftovers = [len(q) for q in self.inbox]
        if any(leftovers):
            raise ProtocolError(f"undelivered messages at exit: {leftovers}")
        return RunResult(
            results=self.results,
            metrics=[c.metrics for c in ctxs],
            wall=float(self.steps),
        )


# ---------------------------------------------------------------------------
# Thread-parallel backend
# ---------------------------------------------------------------------------


class _ParShared:
    def __init__(self, nranks):
        self.nranks = nranks
        self.barrier = threading.Barrier(nranks)
        self.reduce_vals = [0] * nranks
        self.aborted = False
        self.ctxs: list[_ParContext] = []

    def abort(self):
        self.aborted = True
        self.barrier.abort()
        for ctx in self.ctxs:
            with ctx._cond:
                ctx._cond.notify_all()


class _ParContext(RankContext):
    def __init__(self, shared, rank):
        super().__init__(rank, shared.nranks)
        self._shared = shared
        self._inbox = deque()
        self._cond = threading.Condition()

    def send(self, dst, msg):
        self._check_dst(dst)
        self._account_send(dst, msg)
        peer = self._shared.ctxs[dst]
        with peer._cond:
            peer._inbox.append(msg)
            peer._cond.notify()

    def try_receive(self):
        with self._cond:
            if self._inbox:
                return self._inbox.popleft()
        self.metrics.idle_poll_cycles += 1
        return None

    def receive(self):
        shared = self._shared
        with self._cond:
            self._cond.wait_for(lambda: self._inbox or shared.aborted)
            if shared.aborted and not self._inbox:
                raise _Aborted()
            return self._inbox.popleft()

    def barrier(self):
        try:
            self._shared.barrier.wait()
        except threading.BrokenBarrierError:
            raise _Aborted() from None

    def reduce_sum(self, value):
        shared = self._shared
        shared.reduce_vals[self.rank] = int(value)
        self.barrier()
        total = sum(shared.reduce_vals) if self.rank == 0 else None
        self.barrier()
        return total

    def clock(self):
        return time.perf_counter()


def _run_parallel(nranks, program):
    shared = _ParShared(nranks)
    shared.ctxs = [_ParContext(shared, r) for r in range(nranks)]
    results = [None] * nranks
    failures = []

    def entry(rank):
        try:
            results[rank] = program(shared.ctxs[rank])
        except _Aborted:
            pass
        except BaseException as exc:  # noqa: BLE001 - reported as RankFailure
            failures.append((rank, exc))
            shared.abort()

    t0 = time.perf_counter()
    threads = [
        threading.Thread(target=entry, args=(r,), name=f"rank-{r}")
        for r in range(nranks)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    wall = time.perf_counter() - t0
    if failures:
        failures.sort(key=lambda f: f[0])
        rank, exc = failures[0]
        raise RankFailure(rank, exc) from exc
    leftovers = [len(c._inbox) for c in shared.ctxs]
    if any(leftovers):
        raise ProtocolError(f"undelivered messages at exit: {leftovers}")
    return RunResult(
        results=results, metrics=[c.metrics for c in shared.ctxs], wall=wall
    )


def run(nranks: int, program: Callable[[RankContext], Any], *, backend="det",
        seed=0, trace=None) -> RunResult:
    """Execute program(ctx) on every rank to completion and collect results.

    `seed` permutes the deterministic backend's round-robin order (ignored by
    "par"). `trace`, if a list, collects (step, event, rank, peer, tag, node,
    count) tuples under "det" for schedule-determinism checks.
    """
    if nranks < 1:
        raise ValueError(f"need at least one rank, got {nranks}")
    if backend == "det":
        return _DetScheduler(nranks, seed, trace).run(program)
    if backend == "par":
        return _run_parallel(nranks, program)
    raise ValueError(f"unknown backend {backend!r} (expected 'det' or 'par')")
