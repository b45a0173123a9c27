"""Per-edge membership decisions for the sparse connected subgraph.

For a queried edge, a halving ladder of strong-connectivity guesses runs
from the minimum endpoint degree down to the threshold ``T``.  The first
accepted guess yields the estimate ``s_hat = g*/(2*lambda')`` and the edge
is kept with probability ``min(1, lambda/s_hat)``; if every guess above
``T`` is rejected the edge is kept outright (this is what protects bridges
and tree edges).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import EdgeRef, Graph, ProbedView, ProbeStats
from .randomness import derive
from .tester import InvalidEdgeError, TesterConfig, lambda_prime, test_guess


@dataclass(frozen=True)
class LscgConfig:
    """Threshold, tester knobs and the global seed.

    The analysis wants ``T`` well above ``log^2 n`` and well below ``m/n``;
    the engine accepts any ``T >= 1`` and leaves regime reporting to the
    harness.
    """

    T: float = 16.0
    tester: TesterConfig = field(default_factory=TesterConfig)
    seed: int = 0

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("threshold T must be >= 1")


@dataclass
class EdgeDecision:
    accepted: bool
    s_hat: float
    g_star: float | None
    below_threshold: bool
    probes: ProbeStats
    tester_calls: int = 0


def lambda_value(config: TesterConfig, n: int) -> float:
    """Acceptance-coin oversampling constant 64*(d+2)*log(n)."""
    if n < 2:
        raise ValueError(f"graph too small (n={n})")
    log_n = math.log(n) / math.log(config.log_base)
    return config.c_scale * 64.0 * (config.d + 2.0) * max(1.0, log_n)


def query_edge(
    view: ProbedView,
    e: EdgeRef,
    config: LscgConfig,
    engine: str | None = None,
) -> EdgeDecision:
    """Decide membership of ``e`` in the sparse connected subgraph.

    Pure in (graph, e, config): repeated invocations return the same
    decision, and decisions for different edges never interact.
    """
    graph = view.graph
    e = EdgeRef.of(e[0], e[1])
    if not graph.has_edge(e.a, e.b):
        raise InvalidEdgeError(f"({e.a}, {e.b}) is not an edge")
    before = view.stats.copy()
    g = float(min(view.degree(e.a), view.degree(e.b)))
    g_star = None
    tester_calls = 0
    while g > config.T:
        outcome = test_guess(view, e, g, config.tester, config.seed, engine=engine)
        tester_calls += 1
        if outcome.accepted:
            g_star = g
            break
        g /= 2.0
    if g_star is None:
        # every guess above T rejected: keep the edge unconditionally
        return EdgeDecision(
            accepted=True,
            s_hat=float(config.T),
            g_star=None,
            below_threshold=True,
            probes=view.stats - before,
            tester_calls=tester_calls,
        )
    s_hat = g_star / (2.0 * lambda_prime(config.tester, graph.n))
    p_accept = min(1.0, lambda_value(config.tester, graph.n) / s_hat)
    accepted = derive(config.seed, ("accept", e.a, e.b)).bernoulli(p_accept)
    return EdgeDecision(
        accepted=accepted,
        s_hat=s_hat,
        g_star=g_star,
        below_threshold=False,
        probes=view.stats - before,
        tester_calls=tester_calls,
    )


class UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def is_connected(edges, n: int) -> bool:
    """True iff the edge set spans all ``n`` vertices in one component."""
    if n <= 1:
        return True
    uf = UnionFind(n)
    components = n
    for u, v in edges:
        if uf.union(u, v):
            components -= 1
    return components == 1


def graph_is_connected(graph: Graph) -> bool:
    return is_connected(graph.edges(), graph.n)


@dataclass
class MaterializeResult:
    edges: list[EdgeRef]
    n: int
    input_m: int
    connected: bool
    input_connected: bool
    below_threshold_count: int
    tester_accepts: int
    tester_rejects: int
    probes_total: ProbeStats
    probes_max_per_query: int
    probes_mean_per_query: float

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def materialize_subgraph(
    graph: Graph, config: LscgConfig, engine: str | None = None
) -> MaterializeResult:
    """Run ``query_edge`` over every edge (fresh probe view each) and
    collect the accepted set plus probe statistics."""
    input_connected = graph_is_connected(graph)
    accepted: list[EdgeRef] = []
    total = ProbeStats()
    max_per_query = 0
    below = 0
    t_acc = 0
    t_rej = 0
    m = graph.m
    for e in graph.edges():
        view = ProbedView(graph)
        decision = query_edge(view, e, config, engine=engine)
        if decision.accepted:
            accepted.append(e)
        if decision.below_threshold:
            below += 1
        if decision.g_star is not None:
            t_acc += 1
        t_rej += decision.tester_calls - (1 if decision.g_star is not None else 0)
        q = decision.probes.total
        total.add(
            decision.probes.degree_probes,
            decision.probes.neighbor_probes,
            decision.probes.adjacency_probes,
        )
        if q > max_per_query:
            max_per_query = q
    return MaterializeResult(
        edges=sorted(accepted),
        n=graph.n,
        input_m=m,
        connected=is_connected(accepted, graph.n),
        input_connected=input_connected,
        below_threshold_count=below,
        tester_accepts=t_acc,
        tester_rejects=t_rej,
        probes_total=total,
        probes_max_per_query=max_per_query,
        probes_mean_per_query=(total.total / m) if m else 0.0,
    )
