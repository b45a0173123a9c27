import math

import pytest

from lscg.engine import graph_is_connected
from lscg.generators import (
    barbell,
    barbell_bridge,
    complete,
    generate,
    gnp,
    petersen,
    random_regular,
    random_tree,
    star,
)


class TestFixedGenerators:
    def test_complete(self):
        g = complete(5)
        assert g.m == 10
        assert all(g.degree_of(u) == 4 for u in range(5))

    def test_barbell(self):
        g = barbell(5)
        assert g.m == 21
        assert g.n == 10
        assert g.has_edge(*barbell_bridge(5))

    def test_star(self):
        g = star(8)
        assert g.degree_of(0) == 7
        assert all(g.degree_of(u) == 1 for u in range(1, 8))

    def test_petersen(self):
        g = petersen()
        assert g.n == 10 and g.m == 15
        assert all(g.degree_of(u) == 3 for u in range(10))

    def test_bad_params(self):
        with pytest.raises(ValueError):
            complete(0)
        with pytest.raises(ValueError):
            barbell(1)
        with pytest.raises(ValueError):
            star(1)


class TestSeededGenerators:
    def test_gnp_connected_and_reproducible(self):
        g1 = gnp(50, 0.2, seed=3)
        g2 = gnp(50, 0.2, seed=3)
        assert g1 == g2
        assert graph_is_connected(g1)

    def test_gnp_edge_count_binomial(self):
        n, p, seeds = 100, 0.1, 100
        expect = p * n * (n - 1) / 2
        sigma = math.sqrt(n * (n - 1) / 2 * p * (1 - p))
        mean_m = sum(gnp(n, p, seed=s).m for s in range(seeds)) / seeds
        # conditioning on connectivity barely shifts the count at this density
        assert abs(mean_m - expect) <= 3 * sigma / math.sqrt(seeds) + 1.0

    def test_gnp_bad_probability(self):
        with pytest.raises(ValueError):
            gnp(10, 1.5)

    def test_random_tree(self):
        t = random_tree(40, seed=7)
        assert t.m == 39
        assert graph_is_connected(t)

    def test_random_regular(self):
        g = random_regular(16, 4, seed=2)
        assert all(g.degree_of(u) == 4 for u in range(16))
        assert graph_is_connected(g)

    def test_random_regular_infeasible(self):
        with pytest.raises(ValueError):
            random_regular(5, 3, seed=0)  # odd n * degree
        with pytest.raises(ValueError):
            random_regular(4, 4, seed=0)


class TestDispatch:
    def test_generate_seeded(self):
        assert generate("gnp", seed=3, n=50, p=0.2) == gnp(50, 0.2, seed=3)

    def test_generate_unseeded(self):
        assert generate("complete", seed=99, n=5) == complete(5)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            generate("mystery")
