"""Offline ground truth: exact min cuts, strong connectivities and
cut-preservation checks on desk-scale instances.

Everything here has full (non-probe-counted) access to the graph; these
are verifiers for the local algorithms, not local algorithms themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import EdgeRef, Graph
from .randomness import derive

BRUTE_FORCE_MAX_N = 12
CUT_ENUM_MAX_N = 14


@dataclass
class CutResult:
    value: int
    side: frozenset[int]


def _adjacency_matrix(graph: Graph) -> np.ndarray:
    W = np.zeros((graph.n, graph.n), dtype=np.float64)
    for a, b in graph.edges():
        W[a, b] = 1.0
        W[b, a] = 1.0
    return W


def _matrix_components(W: np.ndarray) -> list[list[int]]:
    n = W.shape[0]
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in np.flatnonzero(W[u]):
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _stoer_wagner(W: np.ndarray) -> tuple[float, list[int]]:
    """Global min cut of the weighted graph given by symmetric matrix W.

    Assumes the graph on these vertices is connected and has >= 2 vertices.
    Returns (cut value, one side of the cut as original row indices).
    """
    n = W.shape[0]
    W = W.copy()
    groups: list[list[int]] = [[i] for i in range(n)]
    alive = list(range(n))
    best_value = math.inf
    best_side: list[int] = []
    while len(alive) > 1:
        arr = np.array(alive)
        k = len(alive)
        w = np.zeros(k)
        in_a = np.zeros(k, dtype=bool)
        order = []
        for step in range(k):
            if step == 0:
                sel = 0
            else:
                masked = np.where(in_a, -np.inf, w)
                sel = int(np.argmax(masked))
            order.append(sel)
            in_a[sel] = True
            w += W[arr[sel]][arr]
        t = order[-1]
        s = order[-2]
        # cut of the phase: weight of the last-added supernode towards the rest
        phase_value = float(W[arr[t]][arr].sum())
        if phase_value < best_value:
            best_value = phase_value
            best_side = list(groups[arr[t]])
        # merge t into s
        ts, tt = arr[s], arr[t]
        W[ts, :] += W[tt, :]
        W[:, ts] += W[:, tt]
        W[ts, ts] = 0.0
        groups[ts] = groups[ts] + groups[tt]
        alive.remove(int(tt))
    return best_value, sorted(best_side)


def min_cut(graph: Graph) -> CutResult:
    """Global minimum edge cut; for disconnected input the value is 0 with
    one component as the separating side."""
    if graph.n < 2:
        raise ValueError("min cut needs at least 2 vertices")
    W = _adjacency_matrix(graph)
    comps = _matrix_components(W)
    if len(comps) > 1:
        return CutResult(0, frozenset(comps[0]))
    value, side = _stoer_wagner(W)
    return CutResult(int(round(value)), frozenset(side))


def exact_strong_connectivities(graph: Graph) -> dict[EdgeRef, int]:
    """Recursive min-cut decomposition.

    For each connected piece: every edge inside is at least c-strong where
    c is the piece's min cut; any strictly stronger component lies wholly
    on one side of that cut, so recursing on both sides finds it.
    """
    if graph.n < 2:
        raise ValueError("need at least 2 vertices")
    W = _adjacency_matrix(graph)
    strong: dict[EdgeRef, int] = {e: 0 for e in graph.edges()}

    def recurse(verts: list[int]) -> None:
        if len(verts) < 2:
            return
        sub = W[np.ix_(verts, verts)]
        comps = _matrix_components(sub)
        if len(comps) > 1:
            for comp in comps:
                recurse([verts[i] for i in comp])
            return
        c, side_local = _stoer_wagner(sub)
        c = int(round(c))
        rows, cols = np.nonzero(sub)
        for i, j in zip(rows, cols):
            if i < j:
                e = EdgeRef.of(verts[int(i)], verts[int(j)])
                if c > strong[e]:
                    strong[e] = c
        side = [verts[i] for i in side_local]
        side_set = set(side_local)
        rest = [verts[i] for i in range(len(verts)) if i not in side_set]
        recurse(side)
        recurse(rest)

    recurse(list(range(graph.n)))
    return strong


def brute_force_strong_connectivities(graph: Graph) -> dict[EdgeRef, int]:
    """Direct transcription of the definition: for each edge, maximize the
    min cut over all connected vertex-induced subgraphs containing it.

    Subset enumeration; refuses n > 12.
    """
    n = graph.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    W = _adjacency_matrix(graph)
    edges = list(graph.edges())
    strong = {e: 0 for e in edges}
    for mask in range(1, 1 << n):
        verts = [i for i in range(n) if (mask >> i) & 1]
        if len(verts) < 2:
            continue
        sub = W[np.ix_(verts, verts)]
        if len(_matrix_components(sub)) > 1:
            continue
        c, _ = _stoer_wagner(sub)
        c = int(round(c))
        for e in edges:
            if (mask >> e.a) & 1 and (mask >> e.b) & 1 and c > strong[e]:
                strong[e] = c
    return strong


# -- lemma checks over a strong-connectivity map -----------------------


def check_edge_count_bound(strong: dict[EdgeRef, int], n: int) -> bool:
    """At most t*(n-1) edges may have strong connectivity <= t, for all t."""
    values = sorted(strong.values())
    for t in sorted(set(values)):
        count = sum(1 for s in values if s <= t)
        if count > t * (n - 1):
            return False
    return True


def check_reciprocal_sum(strong: dict[EdgeRef, int], n: int) -> bool:
    return sum(1.0 / s for s in strong.values()) <= n - 1 + 1e-9


def check_degree_bound(graph: Graph, strong: dict[EdgeRef, int]) -> bool:
    return all(
        s <= min(graph.degree_of(e.a), graph.degree_of(e.b))
        for e, s in strong.items()
    )


# -- cut enumeration and sparsification verification -------------------


def _crossing_matrix(graph: Graph) -> tuple[np.ndarray, np.ndarray, list[EdgeRef]]:
    """All 2^(n-1)-1 cut signatures (vertex n-1 pinned to the far side)
    as a boolean (cuts x edges) crossing matrix."""
    n = graph.n
    if n > CUT_ENUM_MAX_N:
        raise ValueError(f"cut enumeration limited to n <= {CUT_ENUM_MAX_N}, got {n}")
    if n < 2:
        raise ValueError("need at least 2 vertices")
    edges = list(graph.edges())
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    cross = np.empty((len(masks), len(edges)), dtype=np.float64)
    for col, (a, b) in enumerate(edges):
        bit_a = (masks >> a) & 1 if a < n - 1 else np.zeros_like(masks)
        bit_b = (masks >> b) & 1 if b < n - 1 else np.zeros_like(masks)
        cross[:, col] = (bit_a != bit_b).astype(np.float64)
    return masks, cross, edges


def enumerate_cut_values(
    graph: Graph, weights: dict[EdgeRef, float] | None = None
) -> dict[int, float]:
    """Weighted value of every cut, keyed by the side bitmask over
    vertices 0..n-2 (vertex n-1 always on the complement side)."""
    masks, cross, edges = _crossing_matrix(graph)
    if weights is None:
        w = np.ones(len(edges))
    else:
        w = np.array([weights[e] for e in edges], dtype=np.float64)
    values = cross @ w
    return dict(zip(masks.tolist(), values.tolist()))


def verify_sparsification(
    graph: Graph,
    p_map: dict[EdgeRef, float],
    eps: float = 0.5,
    trials: int = 200,
    seed: int = 0,
) -> float:
    """Fraction of sampled skeletons (edge e kept w.p. p_map[e], weight
    1/p_map[e]) whose every cut is within (1 +/- eps) of the original."""
    _, cross, edges = _crossing_matrix(graph)
    p_vec = np.array([p_map[e] for e in edges], dtype=np.float64)
    if np.any(p_vec <= 0.0) or np.any(p_vec > 1.0):
        raise ValueError("every keep-probability must lie in (0, 1]")
    base = cross @ np.ones(len(edges))
    lo = (1.0 - eps) * base
    hi = (1.0 + eps) * base
    passes = 0
    for t in range(trials):
        stream = derive(seed, ("sparsify", t))
        keep = np.array([stream.bernoulli(p) for p in p_vec], dtype=np.float64)
        w = keep / p_vec
        vals = cross @ w
        if np.all(vals >= lo - 1e-9) and np.all(vals <= hi + 1e-9):
            passes += 1
    return passes / trials
