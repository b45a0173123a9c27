"""Immutable simple undirected graph with probe-counted access.

The :class:`Graph` itself offers *offline* access (full edge iteration,
membership tests) used by verifiers and the experiment harness.  Online
algorithms must go through a :class:`ProbedView`, which charges every
degree / neighbor / adjacency lookup to a :class:`ProbeStats` counter.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class GraphFormatError(ValueError):
    """Raised when an edge-list input violates the format or the
    simple-graph invariants.  Carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidVertexError(IndexError):
    pass


class InvalidIndexError(IndexError):
    pass


class EdgeRef(NamedTuple):
    """Canonical undirected edge key with ``a < b``."""

    a: int
    b: int

    @classmethod
    def of(cls, u: int, v: int) -> "EdgeRef":
        if u == v:
            raise ValueError(f"self-loop ({u}, {v}) is not a valid edge")
        return cls(u, v) if u < v else cls(v, u)


class Graph:
    """Simple undirected graph stored as CSR with ascending neighbor lists.

    All methods on this class are offline (no probe accounting); they are
    meant for construction, serialization, oracles and harness bookkeeping.
    """

    __slots__ = ("n", "m", "indptr", "indices", "_mirror", "_rows")

    def __init__(self, n: int, adjacency: list[list[int]]):
        if len(adjacency) != n:
            raise ValueError("adjacency must have one list per vertex")
        degs = [len(a) for a in adjacency]
        total = sum(degs)
        if total % 2 != 0:
            raise ValueError("adjacency list lengths must sum to an even number")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degs, out=indptr[1:])
        indices = np.empty(total, dtype=np.int32)
        pos = 0
        for u, nbrs in enumerate(adjacency):
            prev = -1
            for v in nbrs:
                if not (0 <= v < n):
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if v <= prev:
                    raise ValueError(f"adjacency of {u} not strictly ascending")
                prev = v
                indices[pos] = v
                pos += 1
        self.n = n
        self.m = total // 2
        self.indptr = indptr
        self.indices = indices
        self._rows = [indices[indptr[u]:indptr[u + 1]].tolist() for u in range(n)]
        self._mirror = None
        self._check_symmetry()

    def _check_symmetry(self) -> None:
        for u in range(self.n):
            for v in self._rows[u]:
                if u not in self._rows[v]:
                    raise ValueError(f"edge ({u}, {v}) is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop ({u}, {v})")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, [sorted(a) for a in adj])

    # -- offline access ------------------------------------------------

    def degree_of(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors_of(self, u: int) -> list[int]:
        return self._rows[u]

    def has_edge(self, u: int, v: int) -> bool:
        row = self._rows[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self) -> Iterator[EdgeRef]:
        """Canonical edges in lexicographic order."""
        for u in range(self.n):
            for v in self._rows[u]:
                if u < v:
                    yield EdgeRef(u, v)

    def mirror(self) -> np.ndarray:
        """Position of the reverse cell for every CSR cell.

        ``mirror[indptr[u] + i]`` is the CSR position of ``u`` inside the
        adjacency row of its ``i``-th neighbor.  Cached; used by the
        compiled skeleton kernels.
        """
        if self._mirror is None:
            mirror = np.empty(2 * self.m, dtype=np.int64)
            for u in range(self.n):
                base = int(self.indptr[u])
                for i, v in enumerate(self._rows[u]):
                    j = bisect_left(self._rows[v], u)
                    mirror[base + i] = int(self.indptr[v]) + j
            self._mirror = mirror
        return self._mirror

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{a} {b}" for a, b in self.edges())
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._rows == other._rows
        )

    def __hash__(self):
        raise TypeError("Graph is not hashable")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(text: str | bytes) -> Graph:
    """Parse the ``"n m"`` header plus ``m`` lines of ``"u v"`` edges.

    Rejects self-loops, duplicates, out-of-range IDs and malformed lines,
    reporting the 1-based line number of the offender.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty input, expected 'n m' header", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"expected 'n m' header, got {lines[0]!r}", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"non-integer header {lines[0]!r}", 1) from None
    if n < 0 or m < 0:
        raise GraphFormatError("n and m must be nonnegative", 1)
    adj: list[set[int]] = [set() for _ in range(n)]
    count = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint in {raw!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex ID out of range in {raw!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop {raw!r}", lineno)
        if v in adj[u]:
            raise GraphFormatError(f"duplicate edge {raw!r}", lineno)
        adj[u].add(v)
        adj[v].add(u)
        count += 1
    if count != m:
        raise GraphFormatError(f"header declares {m} edges, found {count}", 1)
    return Graph(n, [sorted(a) for a in adj])


@dataclass
class ProbeStats:
    """Monotone counters, one per probe type."""

    degree_probes: int = 0
    neighbor_probes: int = 0
    adjacency_probes: int = 0

    @property
    def total(self) -> int:
        return self.degree_probes + self.neighbor_probes + self.adjacency_probes

    def copy(self) -> "ProbeStats":
        return ProbeStats(self.degree_probes, self.neighbor_probes, self.adjacency_probes)

    def __sub__(self, other: "ProbeStats") -> "ProbeStats":
        return ProbeStats(
            self.degree_probes - other.degree_probes,
            self.neighbor_probes - other.neighbor_probes,
            self.adjacency_probes - other.adjacency_probes,
        )

    def add(self, degree: int = 0, neighbor: int = 0, adjacency: int = 0) -> None:
        self.degree_probes += degree
        self.neighbor_probes += neighbor
        self.adjacency_probes += adjacency

    def as_dict(self) -> dict[str, int]:
        return {
            "degree_probes": self.degree_probes,
            "neighbor_probes": self.neighbor_probes,
            "adjacency_probes": self.adjacency_probes,
            "total": self.total,
        }


class ProbedView:
    """Probe-counted handle onto a shared immutable :class:`Graph`.

    Neighbor indices are 1-based at this interface; vertex IDs are 0-based.
    """

    __slots__ = ("graph", "stats")

    def __init__(self, graph: Graph):
        self.graph = graph
        self.stats = ProbeStats()

    def _check_vertex(self, u: int) -> None:
        if not (0 <= u < self.graph.n):
            raise InvalidVertexError(f"vertex {u} out of range [0, {self.graph.n})")

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        self.stats.degree_probes += 1
        return len(self.graph._rows[u])

    def neighbor(self, u: int, i: int) -> int:
        self._check_vertex(u)
        row = self.graph._rows[u]
        if not (1 <= i <= len(row)):
            raise InvalidIndexError(f"neighbor index {i} out of range for vertex {u}")
        self.stats.neighbor_probes += 1
        return row[i - 1]

    def adjacency(self, u: int, v: int) -> int | None:
        self._check_vertex(u)
        self._check_vertex(v)
        self.stats.adjacency_probes += 1
        row = self.graph._rows[u]
        i = bisect_left(row, v)
        if i < len(row) and row[i] == v:
            return i + 1
        return None

    def probe_count(self) -> ProbeStats:
        return self.stats.copy()
