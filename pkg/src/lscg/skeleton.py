"""Lazy, consistent access to a random skeleton of a graph.

A skeleton keeps every edge of the base graph independently with
probability ``p``.  Instead of realizing the whole skeleton up front, the
state decides edges on demand through ``next_neighbor`` queries.  The coin
for an edge is a pure function of the state key and the edge's endpoint
pair, so the realized skeleton does not depend on the order in which its
cells are examined: any interleaving of queries, and a full
materialization, all see the same skeleton.

Two pieces of per-vertex knowledge are maintained:

* ``last[u]`` -- 1-based index into N(u) of the highest position whose
  presence/absence has been decided from u's side (0 means none);
* ``present[u]`` -- ascending set of indices of known-present neighbors,
  kept mirror-symmetric across both endpoints of every kept edge.

``present`` lets a scan jump straight to an edge already discovered from
the other endpoint without re-deriving its coin.

This module is the readable reference implementation; ``lscg.kernels``
provides a compiled equivalent for the breadth-first-search access pattern
used by the strong-connectivity tester.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Container

from .graph import EdgeRef, InvalidVertexError, ProbedView
from .randomness import RandomStream, StreamKey, edge_uniform


@dataclass
class SkeletonTrace:
    """Work counters for one skeleton state (monotone)."""

    next_neighbor_calls: int = 0
    absent_cells: int = 0
    max_absent_run: int = 0


class SkeletonState:
    """Partial realization of one random skeleton of ``view.graph``.

    Single-owner and mutable; distinct states (distinct keys) may run
    against the same shared graph.
    """

    def __init__(self, view: ProbedView, p: float, stream: RandomStream | StreamKey):
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"keep-probability {p} outside [0, 1]")
        self.view = view
        self.p = p
        if isinstance(stream, StreamKey):
            stream = stream.stream()
        self.state0 = stream.state
        self.last: dict[int, int] = {}
        self.present: dict[int, set[int]] = {}
        self.trace = SkeletonTrace()
        self._deg: dict[int, int] = {}

    def _degree(self, u: int) -> int:
        # degree is probed once per vertex per state, then cached
        d = self._deg.get(u)
        if d is None:
            d = self.view.degree(u)
            self._deg[u] = d
        return d

    def edge_kept(self, u: int, v: int) -> bool:
        """The skeleton coin of edge {u, v}: symmetric, order-free."""
        a, b = (u, v) if u < v else (v, u)
        return edge_uniform(self.state0, a, b) < self.p

    def _scan(self, u: int, a: int, b: int) -> tuple[int, int | None]:
        """First kept index in (a, b) with its neighbor ID, or (b, None).

        One neighbor probe per examined cell; cells found absent are
        recorded only through ``last`` (their coins are re-derivable).
        """
        if a >= b:
            raise ValueError(f"empty interval ({a}, {b}]")
        if self.p <= 0.0:
            return b, None
        run = 0
        i = a
        while i + 1 < b:
            i += 1
            v = self.view.neighbor(u, i)
            if self.edge_kept(u, v):
                self.trace.absent_cells += run
                if run > self.trace.max_absent_run:
                    self.trace.max_absent_run = run
                return i, v
            run += 1
        self.trace.absent_cells += run
        if run > self.trace.max_absent_run:
            self.trace.max_absent_run = run
        return b, None

    def sample_next_index(self, u: int, a: int, b: int) -> int:
        """Index in (a, b] of u's first kept neighbor, or b as a sentinel.

        ``b`` doubles as "next already-known-present index" and
        "degree(u)+1 exhausted" sentinel; either way a return of ``b``
        means no new neighbor strictly inside the interval.  For fresh
        cells the return law is the truncated geometric
        P(a + k) = p * (1-p)^(k-1) with the tail mass on ``b``.
        """
        index, _ = self._scan(u, a, b)
        return index

    def next_neighbor(self, u: int) -> int | None:
        """Next kept neighbor of ``u`` in ascending index order, or None.

        Each kept neighbor is returned exactly once across successive
        calls; once exhausted every later call returns None.
        """
        if not (0 <= u < self.view.graph.n):
            raise InvalidVertexError(f"vertex {u} out of range")
        self.trace.next_neighbor_calls += 1
        deg = self._degree(u)
        pu = self.present.setdefault(u, set())
        v_index = self.last.get(u, 0)
        if v_index >= deg + 1:
            return None
        w_index = min((i for i in pu if i > v_index), default=deg + 1)

        v_index, v = self._scan(u, v_index, w_index)
        if v is not None:
            # fresh keep: record it symmetrically on both endpoints
            j = self.view.adjacency(v, u)
            assert j is not None
            # the mirror cell cannot already be decided: a kept decision
            # from v's side would have been mirrored into present[u]
            assert j > self.last.get(v, 0)
            pu.add(v_index)
            self.present.setdefault(v, set()).add(j)
        self.last[u] = v_index
        if v_index == deg + 1:
            return None
        if v is None:
            # known-present neighbor reached at w_index; resolve its ID
            v = self.view.neighbor(u, v_index)
        return v

    def reachable(self, source: int, members: Container[int] | Callable[[int], bool]) -> set[int]:
        """FIFO BFS closure of ``source`` in the skeleton, restricted to
        ``members``.  Neighbors outside the member set are discarded after
        resolution (their edge decisions still count and persist)."""
        test = members if callable(members) else members.__contains__
        if not test(source):
            raise ValueError(f"source {source} is not a member")
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            while True:
                v = self.next_neighbor(u)
                if v is None:
                    break
                if v not in seen and test(v):
                    seen.add(v)
                    queue.append(v)
        return seen

    def materialize(self) -> set[EdgeRef]:
        """Exhaust every vertex and return the realized edge set.

        Because edge coins are keyed by endpoint pair, the result is the
        same whether the state is fresh or was partially explored first.
        """
        edges: set[EdgeRef] = set()
        for u in range(self.view.graph.n):
            while True:
                v = self.next_neighbor(u)
                if v is None:
                    break
                edges.add(EdgeRef.of(u, v))
        return edges


def new_skeleton(view: ProbedView, p: float, key: StreamKey | RandomStream) -> SkeletonState:
    return SkeletonState(view, p, key)
