"""tricount: exact triangle counting for undirected graphs.

A sequential degree-ordered counter, two distributed algorithms simulated
over a message-passing runtime (non-overlapping-partition counting with
surrogate or direct communication, and coordinator/worker dynamic load
balancing), plus partition-size accounting and a benchmark harness.
"""

from .dynamic_lb import Task, TaskPlan, count_dynamic, count_task, plan_tasks, task_cost
from .graph import Graph, RawGraph, build_graph, normalize
from .graph_io import (
    EdgeListParseError,
    PaParams,
    export_edge_list,
    generate_pa,
    load_edge_list,
    load_edge_list_path,
)
from .partitioning import (
    CostKind,
    NodeRange,
    Partition,
    WORD_BYTES,
    balanced_ranges,
    build_partition,
    graph_bytes_forward,
    graph_bytes_full,
    node_costs,
    owner_of,
    partition_bytes_nonoverlapping,
    partition_bytes_overlapping_estimate,
    partition_ranges,
    range_bounds,
)
from .runtime import (
    Message,
    ProtocolError,
    RankFailure,
    RankMetrics,
    RunResult,
    Tag,
    run,
)
from .sequential import count_triangles_brute, count_triangles_seq, intersect_count
from .space_efficient import (
    count_space_direct,
    count_space_surrogate,
    dedup_send_targets,
    surrogate_count,
)

__version__ = "0.1.0"

__all__ = [
    "CostKind",
    "EdgeListParseError",
    "Graph",
    "Message",
    "NodeRange",
    "PaParams",
    "Partition",
    "ProtocolError",
    "RankFailure",
    "RankMetrics",
    "RawGraph",
    "RunResult",
    "Tag",
    "Task",
    "TaskPlan",
    "WORD_BYTES",
    "balanced_ranges",
    "build_graph",
    "build_partition",
    "count_dynamic",
    "count_space_direct",
    "count_space_surrogate",
    "count_task",
    "count_triangles_brute",
    "count_triangles_seq",
    "dedup_send_targets",
    "export_edge_list",
    "generate_pa",
    "graph_bytes_forward",
    "graph_bytes_full",
    "intersect_count",
    "load_edge_list",
    "load_edge_list_path",
    "node_costs",
    "normalize",
    "owner_of",
    "partition_bytes_nonoverlapping",
    "partition_bytes_overlapping_estimate",
    "partition_ranges",
    "plan_tasks",
    "range_bounds",
    "run",
    "surrogate_count",
    "task_cost",
]
