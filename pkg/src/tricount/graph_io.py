"""Edge-list file ingestion/export and the preferential-attachment generator.

File format: whitespace-separated integer pairs, one edge per line; lines
starting with '#' are comments; blank lines are ignored. Exports write
canonical (relabeled) edges "u v" with u < v in ascending order, so
export -> import -> normalize is a fixed point.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, RawGraph


class EdgeListParseError(ValueError):
    def __init__(self, lineno, reason):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno


@dataclass(frozen=True)
class PaParams:
    """Preferential-attachment parameters: n nodes, even target average
    degree d >= 2 (so d/2 attachments per new node), 64-bit seed."""

    n: int
    d: int
    seed: int = 0

    def __post_init__(self):
        if self.d < 2 or self.d % 2 != 0:
            raise ValueError(f"d must be an even integer >= 2, got {self.d}")
        if self.n <= self.d:
            raise ValueError(f"n must exceed d, got n={self.n}, d={self.d}")


def load_edge_list(stream) -> RawGraph:
    """Parse EdgeListFormat from a binary (or text) stream into a RawGraph.

    Pairs are kept verbatim; dedup and self-loop removal happen in
    normalize(). Malformed lines raise EdgeListParseError with the 1-based
    line number.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    pairs = []
    for lineno, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("ascii", errors="replace")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, f"expected 2 tokens, got {len(tokens)}")
        try:
            u = int(tokens[0])
            v = int(tokens[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"non-integer token in {tokens}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, "negative node id")
        pairs.append((u, v))
    edges = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    n = int(edges.max()) + 1 if edges.size else 0
    return RawGraph(n=n, edges=edges)


def load_edge_list_path(path) -> RawGraph:
    with open(path, "rb") as fh:
        return load_edge_list(fh)


def export_edge_list(g: Graph, sink) -> None:
    """Write canonical edges "u v" (u < v), ascending, one per line.

    Accepts a path, a text stream, or a binary stream.
    """
    close = False
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        sink = open(sink, "w")
        close = True
    try:
        sink.write("")
        encode = False
    except TypeError:
        encode = True
    try:
        for u, v in g.canonical_edges():
            line = f"{u} {v}\n"
            sink.write(line.encode("ascii") if encode else line)
    finally:
        if close:
            sink.close()


def generate_pa(params: PaParams) -> RawGraph:
    """Deterministic preferential-attachment graph.

    Seed clique on d/2 + 1 nodes, then every later node attaches d/2 edges to
    existing nodes chosen proportionally to current degree (duplicates
    resampled). Identical edge list for identical params on every platform;
    m <= n*d/2.
    """
    k = params.d // 2
    src, dst = _kernels.pa_edge_list(params.n, k, np.uint64(params.seed))
    return RawGraph(n=params.n, edges=np.column_stack([src, dst]))
