"""Seeded graph generators for experiments and tests."""

from __future__ import annotations

import random

from .engine import graph_is_connected
from .graph import EdgeRef, Graph

GNP_MAX_ATTEMPTS = 100
REGULAR_MAX_ATTEMPTS = 1000


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be positive")
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def barbell(k: int) -> Graph:
    """Two k-cliques joined by the bridge (k-1, k)."""
    if k < 2:
        raise ValueError("clique size must be >= 2")
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    edges += [(k + u, k + v) for u in range(k) for v in range(u + 1, k)]
    edges.append((k - 1, k))
    return Graph.from_edges(2 * k, edges)


def barbell_bridge(k: int) -> EdgeRef:
    return EdgeRef(k - 1, k)


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p) conditioned on connectivity by resampling."""
    if not (0.0 <= p <= 1.0):
        raise ValueError("edge probability outside [0, 1]")
    rng = random.Random(seed)
    for _ in range(GNP_MAX_ATTEMPTS):
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        graph = Graph.from_edges(n, edges)
        if graph_is_connected(graph):
            return graph
    raise RuntimeError(f"no connected G({n}, {p}) sample in {GNP_MAX_ATTEMPTS} attempts")


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform random recursive tree: vertex v attaches to a uniformly
    chosen earlier vertex."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph.from_edges(n, edges)


def star(n: int) -> Graph:
    """Vertex 0 joined to every other vertex."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def petersen() -> Graph:
    """Outer 5-cycle, inner pentagram, five spokes."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def random_regular(n: int, degree: int, seed: int = 0) -> Graph:
    """Configuration-model sample, rejected until simple and connected."""
    if degree < 1 or degree >= n:
        raise ValueError(f"infeasible degree {degree} for n={n}")
    if (n * degree) % 2 != 0:
        raise ValueError(f"n*degree must be even, got n={n}, degree={degree}")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(degree)]
    for _ in range(REGULAR_MAX_ATTEMPTS):
        rng.shuffle(stubs)
        seen: set[tuple[int, int]] = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            key = (u, v) if u < v else (v, u)
            if key in seen:
                ok = False
                break
            seen.add(key)
        if not ok:
            continue
        graph = Graph.from_edges(n, sorted(seen))
        if graph_is_connected(graph):
            return graph
    raise RuntimeError(
        f"no simple connected {degree}-regular sample in {REGULAR_MAX_ATTEMPTS} attempts"
    )


GENERATORS = {
    "complete": complete,
    "barbell": barbell,
    "gnp": gnp,
    "random_tree": random_tree,
    "random_regular": random_regular,
    "star": star,
    "petersen": petersen,
}

_SEEDED = {"gnp", "random_tree", "random_regular"}


def generate(kind: str, seed: int = 0, **params) -> Graph:
    """Dispatch by generator name; seeded kinds receive ``seed``."""
    if kind not in GENERATORS:
        raise ValueError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
    fn = GENERATORS[kind]
    if kind in _SEEDED:
        return fn(seed=seed, **params)
    return fn(**params)
