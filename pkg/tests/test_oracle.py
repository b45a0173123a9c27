import random

import pytest

from lscg.generators import barbell, barbell_bridge, complete, gnp
from lscg.graph import EdgeRef, Graph
from lscg.oracle import (
    brute_force_strong_connectivities,
    check_degree_bound,
    check_edge_count_bound,
    check_reciprocal_sum,
    enumerate_cut_values,
    exact_strong_connectivities,
    min_cut,
    verify_sparsification,
)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


class TestMinCut:
    def test_complete_graph(self):
        assert min_cut(complete(4)).value == 3

    def test_cycle(self):
        assert min_cut(cycle(6)).value == 2

    def test_path(self):
        assert min_cut(Graph.from_edges(3, [(0, 1), (1, 2)])).value == 1

    def test_barbell_bridge_is_min(self):
        result = min_cut(barbell(4))
        assert result.value == 1
        assert result.side in (frozenset(range(4)), frozenset(range(4, 8)))

    def test_disconnected(self):
        result = min_cut(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert result.value == 0

    def test_too_small(self):
        with pytest.raises(ValueError):
            min_cut(Graph.from_edges(1, []))

    def test_cut_side_is_certificate(self):
        for seed in range(10):
            g = gnp(10, 0.4, seed=seed)
            result = min_cut(g)
            crossing = sum(1 for a, b in g.edges() if (a in result.side) != (b in result.side))
            assert crossing == result.value
            assert 0 < len(result.side) < g.n


class TestStrongConnectivities:
    def test_complete_graph(self):
        strong = exact_strong_connectivities(complete(4))
        assert all(s == 3 for s in strong.values())

    def test_cycle(self):
        strong = exact_strong_connectivities(cycle(6))
        assert all(s == 2 for s in strong.values())

    def test_barbell(self):
        strong = exact_strong_connectivities(barbell(5))
        assert strong[barbell_bridge(5)] == 1
        clique_edges = [e for e in strong if e != barbell_bridge(5)]
        assert all(strong[e] == 4 for e in clique_edges)

    def test_matches_brute_force(self):
        rng = random.Random(0)
        for _ in range(30):
            n = rng.randint(4, 9)
            g = gnp(n, rng.choice([0.3, 0.5, 0.8]), seed=rng.getrandbits(32))
            assert exact_strong_connectivities(g) == brute_force_strong_connectivities(g)

    def test_brute_force_size_guard(self):
        with pytest.raises(ValueError):
            brute_force_strong_connectivities(complete(13))


class TestLemmaChecks:
    def test_on_random_graphs(self):
        rng = random.Random(5)
        for _ in range(20):
            g = gnp(rng.randint(4, 20), 0.4, seed=rng.getrandbits(32))
            strong = exact_strong_connectivities(g)
            assert check_edge_count_bound(strong, g.n)
            assert check_reciprocal_sum(strong, g.n)
            assert check_degree_bound(g, strong)

    def test_edge_count_bound_detects_violation(self):
        fake = {EdgeRef(0, 1): 1, EdgeRef(1, 2): 1, EdgeRef(0, 2): 1}
        # 3 edges claim s_e = 1 on 3 vertices: more than 1 * (n - 1) = 2
        assert not check_edge_count_bound(fake, 3)

    def test_reciprocal_sum_detects_violation(self):
        fake = {EdgeRef(i, i + 1): 1 for i in range(5)}
        assert not check_reciprocal_sum(fake, 3)


class TestCutEnumeration:
    def test_triangle_cuts(self):
        values = enumerate_cut_values(complete(3))
        assert sorted(values.values()) == [2.0, 2.0, 2.0]

    def test_k4_cut_values(self):
        values = enumerate_cut_values(complete(4))
        # 4 singleton cuts of value 3, 3 bisections of value 4
        assert sorted(values.values()) == [3.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0]

    def test_weighted(self):
        g = complete(3)
        weights = {e: 2.0 for e in g.edges()}
        values = enumerate_cut_values(g, weights)
        assert sorted(values.values()) == [4.0, 4.0, 4.0]

    def test_size_guard(self):
        with pytest.raises(ValueError):
            enumerate_cut_values(complete(15))


class TestVerifySparsification:
    def test_keep_all_preserves_exactly(self):
        g = complete(8)
        p_map = {e: 1.0 for e in g.edges()}
        assert verify_sparsification(g, p_map, eps=0.5, trials=50) == 1.0

    def test_strong_connectivity_sampling_rate(self):
        g = complete(12)
        strong = exact_strong_connectivities(g)
        from lscg.engine import lambda_value
        from lscg.tester import TesterConfig

        lam = lambda_value(TesterConfig(d=2, c_scale=0.3), g.n)
        p_map = {e: min(1.0, lam / s) for e, s in strong.items()}
        assert verify_sparsification(g, p_map, eps=0.5, trials=100, seed=1) >= 0.9

    def test_rejects_zero_probability(self):
        g = complete(4)
        p_map = {e: 0.0 for e in g.edges()}
        with pytest.raises(ValueError):
            verify_sparsification(g, p_map)
