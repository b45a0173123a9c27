"""Compiled fast path for skeleton reachability rounds.

The strong-connectivity tester spends nearly all of its time exhausting
lazy skeleton neighborhoods during breadth-first search.  This module
reimplements exactly that access pattern (one fresh skeleton state, BFS
from a source, every dequeued vertex exhausted) as a numba kernel that is
bit-identical to :class:`lscg.skeleton.SkeletonState` -- same per-edge
coins, same decisions, same probe counters.  Equivalence is asserted by
the test suite on many graphs and keys.

If numba is unavailable the tester falls back to the reference
implementation transparently.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TWO_NEG53 = 2.0**-53
_ONE = np.uint64(1)

# stats vector layout
DEGREE, NEIGHBOR, ADJACENCY, NN_CALLS, ABSENT, MAX_ABSENT_RUN = range(6)


@njit(cache=True, nogil=True, inline="always")
def _edge_uniform(state0, a, b):
    z = state0 + (np.uint64(a) + _ONE) * _GAMMA
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    z = z + (np.uint64(b) + _ONE) * _GAMMA
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return (np.float64(z >> _S11) + 0.5) * _TWO_NEG53


@njit(cache=True, nogil=True)
def _skeleton_bfs(indptr, indices, mirror, src, members, p, state0):
    """One skeleton round: BFS closure of ``src`` restricted to ``members``.

    Returns (visited uint8[n], stats int64[6]).
    """
    n = indptr.shape[0] - 1
    nnz = indices.shape[0]
    last = np.zeros(n, np.int64)
    pres = np.zeros(nnz, np.uint8)
    pend = np.zeros(nnz, np.int64)  # known-present indices, CSR-aligned per vertex
    pcount = np.zeros(n, np.int64)
    pptr = np.zeros(n, np.int64)
    visited = np.zeros(n, np.uint8)
    queue = np.empty(n, np.int64)
    stats = np.zeros(6, np.int64)

    visited[src] = 1
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        base = indptr[u]
        deg = indptr[u + 1] - base
        stats[DEGREE] += 1  # degree probed once per vertex per state
        v_index = last[u]
        while True:  # next_neighbor(u) until the exhausted sentinel
            stats[NN_CALLS] += 1
            while pptr[u] < pcount[u] and pend[base + pptr[u]] <= v_index:
                pptr[u] += 1
            if pptr[u] < pcount[u]:
                w_index = pend[base + pptr[u]]
            else:
                w_index = deg + 1
            # scan (v_index, w_index) for the first kept fresh cell
            run = 0
            fresh = False
            v = -1
            cell = -1
            if p > 0.0:
                while v_index + 1 < w_index:
                    v_index += 1
                    cell = base + v_index - 1
                    v = indices[cell]
                    stats[NEIGHBOR] += 1
                    if u < v:
                        u01 = _edge_uniform(state0, u, v)
                    else:
                        u01 = _edge_uniform(state0, v, u)
                    if u01 < p:
                        fresh = True
                        break
                    run += 1
            if not fresh:
                v_index = w_index
            stats[ABSENT] += run
            if run > stats[MAX_ABSENT_RUN]:
                stats[MAX_ABSENT_RUN] = run
            if fresh:
                # record the keep symmetrically on both endpoints
                mcell = mirror[cell]
                stats[ADJACENCY] += 1
                j = mcell - indptr[v] + 1
                pres[cell] = 1
                pres[mcell] = 1
                vb = indptr[v]
                c = pcount[v]
                pos = c
                while pos > 0 and pend[vb + pos - 1] > j:
                    pend[vb + pos] = pend[vb + pos - 1]
                    pos -= 1
                pend[vb + pos] = j
                pcount[v] = c + 1
            last[u] = v_index
            if v_index == deg + 1:
                break
            if not fresh:
                # known-present neighbor reached at w_index; resolve its ID
                cell = base + v_index - 1
                v = indices[cell]
                stats[NEIGHBOR] += 1
            if members[v] != 0 and visited[v] == 0:
                visited[v] = 1
                queue[tail] = v
                tail += 1
    return visited, stats


def skeleton_bfs_round(graph, src: int, members: np.ndarray, p: float, state: int):
    """Python-facing wrapper; ``members`` is a uint8 mask of length n."""
    visited, stats = _skeleton_bfs(
        graph.indptr,
        graph.indices,
        graph.mirror(),
        src,
        members,
        float(p),
        np.uint64(state),
    )
    return visited, stats
