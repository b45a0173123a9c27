import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lscg.generators import complete, gnp, petersen
from lscg.graph import EdgeRef, InvalidVertexError, ProbedView
from lscg.kernels import skeleton_bfs_round
from lscg.randomness import derive, derive_state, edge_uniform
from lscg.skeleton import SkeletonState
from lscg.tester import _run_round_reference


def make_state(graph, p, label="s", seed=0):
    return SkeletonState(ProbedView(graph), p, derive(seed, ("test", label, repr(p))))


def exhaust(state, u):
    out = []
    while True:
        v = state.next_neighbor(u)
        if v is None:
            return out
        out.append(v)


def expected_skeleton(graph, state):
    """Independent oracle: the coin of every edge, evaluated directly."""
    return {
        e for e in graph.edges() if edge_uniform(state.state0, e.a, e.b) < state.p
    }


class TestNextNeighbor:
    def test_p_one_returns_all_neighbors_ascending(self):
        g = petersen()
        state = make_state(g, 1.0)
        for u in range(g.n):
            assert exhaust(state, u) == g.neighbors_of(u)

    def test_p_zero_immediately_exhausted(self):
        g = petersen()
        state = make_state(g, 0.0)
        assert exhaust(state, 0) == []
        assert state.next_neighbor(0) is None

    def test_exhausted_stays_exhausted(self):
        g = complete(5)
        state = make_state(g, 0.7)
        exhaust(state, 2)
        assert state.next_neighbor(2) is None
        assert state.next_neighbor(2) is None

    def test_invalid_vertex(self):
        state = make_state(petersen(), 0.5)
        with pytest.raises(InvalidVertexError):
            state.next_neighbor(10)

    def test_each_kept_neighbor_exactly_once(self):
        g = gnp(24, 0.4, seed=5)
        state = make_state(g, 0.6)
        for u in range(g.n):
            seq = exhaust(state, u)
            assert len(seq) == len(set(seq))
            assert seq == sorted(seq)

    def test_materialize_matches_direct_coins(self):
        for seed in range(10):
            for p in (0.2, 0.5, 0.8):
                g = gnp(20, 0.4, seed=seed)
                state = make_state(g, p, seed=seed)
                assert state.materialize() == expected_skeleton(g, state)

    def test_rejects_bad_probability(self):
        with pytest.raises(ValueError):
            make_state(petersen(), 1.5)


class TestSampleNextIndex:
    def test_empty_interval_rejected(self):
        state = make_state(complete(12), 0.5)
        with pytest.raises(ValueError):
            state.sample_next_index(0, 3, 3)

    def test_p_zero_returns_sentinel(self):
        state = make_state(complete(12), 0.0)
        assert state.sample_next_index(0, 0, 12) == 12

    def test_p_one_returns_next(self):
        state = make_state(complete(12), 1.0)
        assert state.sample_next_index(0, 0, 12) == 1
        assert state.sample_next_index(0, 4, 12) == 5

    def test_truncated_geometric_law(self):
        # interval (0, 11] at p = 0.5: P(1) = 0.5, P(11) = 2^-10
        trials = 4000
        counts = {}
        for i in range(trials):
            state = SkeletonState(
                ProbedView(complete(12)), 0.5, derive(7, ("sni", i))
            )
            r = state.sample_next_index(0, 0, 11)
            counts[r] = counts.get(r, 0) + 1
        first = counts.get(1, 0) / trials
        assert abs(first - 0.5) <= 3 * math.sqrt(0.25 / trials)
        assert counts.get(11, 0) / trials <= 0.02


class TestConsistency:
    def test_reachable_equals_materialized_twin(self):
        """The realized skeleton does not depend on exploration order, so a
        lazy BFS must agree with a from-scratch materialization of a twin
        state built from the same key."""
        for graph in (petersen(), gnp(32, 0.3, seed=3)):
            for i in range(20):
                for p in (0.2, 0.5, 0.8):
                    key = ("twin", graph.n, i, repr(p))
                    lazy = SkeletonState(ProbedView(graph), p, derive(0, key))
                    reached = lazy.reachable(0, range(graph.n))
                    twin = SkeletonState(ProbedView(graph), p, derive(0, key))
                    edges = twin.materialize()
                    assert reached == _component(edges, 0)

    def test_reachable_matches_direct_coin_component(self):
        for seed in range(10):
            g = gnp(24, 0.4, seed=9)
            state = SkeletonState(ProbedView(g), 0.5, derive(seed, ("partial",)))
            skeleton = expected_skeleton(g, state)
            assert state.reachable(0, range(g.n)) == _component(skeleton, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6), st.data())
    def test_interleaved_calls_consistent(self, key, data):
        g = gnp(12, 0.5, seed=2)
        state = SkeletonState(ProbedView(g), 0.5, derive(4, ("inter", key)))
        expected = expected_skeleton(g, state)
        seen = set()
        order = data.draw(
            st.lists(st.integers(min_value=0, max_value=g.n - 1), max_size=60)
        )
        for u in order:
            v = state.next_neighbor(u)
            if v is not None:
                seen.add(EdgeRef.of(u, v))
        assert seen <= expected
        # finishing the exploration recovers exactly the full skeleton
        assert state.materialize() | seen == expected

    def test_restricted_reachable_subset(self):
        g = gnp(24, 0.4, seed=11)
        state = make_state(g, 0.6, label="restricted")
        members = set(range(0, g.n, 2))
        reached = state.reachable(0, members)
        assert reached <= members
        full = SkeletonState(ProbedView(g), 0.6, derive(0, ("test", "restricted", repr(0.6))))
        assert reached <= full.reachable(0, range(g.n))

    def test_reachable_rejects_nonmember_source(self):
        state = make_state(petersen(), 0.5)
        with pytest.raises(ValueError):
            state.reachable(0, {1, 2})


class TestProbeAccounting:
    def test_degree_probed_once_per_vertex(self):
        g = complete(8)
        state = make_state(g, 1.0)
        exhaust(state, 3)
        exhaust(state, 3)
        state.next_neighbor(3)
        assert state.view.stats.degree_probes == 1

    def test_full_exhaustion_probe_budget(self):
        # every cell costs one neighbor probe from its own side; each kept
        # edge costs one adjacency probe plus one extra neighbor probe when
        # its second side reaches it as a known-present cell
        g = gnp(24, 0.4, seed=13)
        state = make_state(g, 0.5, label="budget")
        kept = state.materialize()
        stats = state.view.stats
        assert stats.degree_probes == g.n
        assert stats.adjacency_probes == len(kept)
        assert stats.neighbor_probes == 2 * g.m


class TestTraceCounters:
    def test_scan_run_bounded_by_degree(self):
        g = gnp(64, 0.3, seed=17)
        state = make_state(g, 0.2, label="trace")
        state.materialize()
        max_deg = max(g.degree_of(u) for u in range(g.n))
        assert 0 < state.trace.max_absent_run <= max_deg
        assert state.trace.next_neighbor_calls >= g.n

    def test_p_one_no_absent_cells(self):
        state = make_state(petersen(), 1.0)
        state.materialize()
        assert state.trace.absent_cells == 0


class TestKernelEquivalence:
    @pytest.mark.parametrize("p", [0.0, 0.17, 0.5, 0.83, 1.0])
    def test_bfs_round_bit_identical(self, p):
        for gi, graph in enumerate([petersen(), complete(16), gnp(48, 0.25, seed=8)]):
            for s in range(6):
                path = ("kq", gi, s, repr(p))
                members = np.ones(graph.n, dtype=np.uint8)
                if s % 2 == 1:
                    members[1::2] = 0
                    members[0] = 1
                view = ProbedView(graph)
                vis_ref, stats_ref = _run_round_reference(view, p, 77, path, 0, members)
                vis_k, stats_k = skeleton_bfs_round(
                    graph, 0, members, p, derive_state(77, path)
                )
                assert np.array_equal(vis_ref, vis_k)
                assert np.array_equal(stats_ref, stats_k)


def _component(edges, source):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {source}
    stack = [source]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen
