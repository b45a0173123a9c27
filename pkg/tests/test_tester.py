import math

import pytest

from lscg.generators import barbell, barbell_bridge, complete, gnp
from lscg.graph import EdgeRef, ProbedView
from lscg.tester import InvalidEdgeError, TesterConfig, lambda_prime, round_budget
from lscg.tester import test_guess as run_guess


class TestLambdaPrime:
    def test_default_constants(self):
        assert lambda_prime(TesterConfig(d=2), 1024) == pytest.approx(480.0)
        assert lambda_prime(TesterConfig(d=0), 2) == pytest.approx(24.0)

    def test_linear_in_c_scale(self):
        assert lambda_prime(TesterConfig(d=2, c_scale=0.1), 1024) == pytest.approx(48.0)

    def test_log_floor(self):
        # log is floored at one unit so tiny S never yields p = 0
        cfg = TesterConfig(d=2, log_base=10.0)
        assert lambda_prime(cfg, 2) == lambda_prime(cfg, 10)

    def test_degenerate_size(self):
        with pytest.raises(ValueError):
            lambda_prime(TesterConfig(), 1)


class TestConfigValidation:
    def test_rejects_negative_d(self):
        with pytest.raises(ValueError):
            TesterConfig(d=-1)

    def test_rejects_nonpositive_scale(self):
        with pytest.raises(ValueError):
            TesterConfig(c_scale=0)

    def test_rejects_log_base_one(self):
        with pytest.raises(ValueError):
            TesterConfig(log_base=1.0)

    def test_rejects_bad_rounds(self):
        with pytest.raises(ValueError):
            TesterConfig(rounds_override=0)


class TestRoundBudget:
    def test_formula(self):
        assert round_budget(TesterConfig(), 32) == math.ceil(math.log(32) / math.log(1.5))

    def test_override(self):
        assert round_budget(TesterConfig(rounds_override=3), 1000) == 3


class TestTestGuess:
    def test_clamped_p_always_accepts(self):
        # g <= lambda' forces p = 1, the skeleton is the whole graph and S
        # never shrinks on a connected graph
        g = gnp(20, 0.4, seed=1)
        outcome = run_guess(ProbedView(g), EdgeRef(0, 1) if g.has_edge(0, 1) else next(iter(g.edges())), 2.0, TesterConfig(), seed=0)
        assert outcome.accepted
        assert outcome.rounds_run == round_budget(TesterConfig(), g.n)
        assert outcome.final_s_size == g.n

    def test_deterministic(self):
        g = complete(16)
        cfg = TesterConfig(d=2, c_scale=0.1)
        runs = [
            run_guess(ProbedView(g), EdgeRef(2, 5), 15.0, cfg, seed=9) for _ in range(3)
        ]
        assert len({r.verdict for r in runs}) == 1
        assert len({r.rounds_run for r in runs}) == 1
        assert len({r.probes.total for r in runs}) == 1

    def test_engines_agree(self):
        g = gnp(32, 0.3, seed=4)
        cfg = TesterConfig(d=2, c_scale=0.1)
        e = next(iter(g.edges()))
        for guess in (4.0, 16.0):
            for seed in range(5):
                a = run_guess(ProbedView(g), e, guess, cfg, seed=seed, engine="kernel")
                b = run_guess(ProbedView(g), e, guess, cfg, seed=seed, engine="reference")
                assert a.verdict == b.verdict
                assert a.rounds_run == b.rounds_run
                assert a.final_s_size == b.final_s_size
                assert a.probes.as_dict() == b.probes.as_dict()

    def test_small_guess_acceptance_rate(self):
        g = complete(16)
        cfg = TesterConfig(d=2, c_scale=0.1)
        accepts = sum(
            run_guess(ProbedView(g), EdgeRef(0, 1), 8.0, cfg, seed=s).accepted
            for s in range(30)
        )
        assert accepts >= 27

    def test_big_guess_rejection_rate(self):
        bar = barbell(8)
        bridge = barbell_bridge(8)
        cfg = TesterConfig(d=2, c_scale=0.1)
        g_big = 2.0 * lambda_prime(cfg, bar.n)
        rejects = sum(
            not run_guess(ProbedView(bar), bridge, g_big, cfg, seed=s).accepted
            for s in range(30)
        )
        assert rejects >= 27

    def test_reject_stops_early(self):
        bar = barbell(6)
        cfg = TesterConfig(d=2, c_scale=0.05)
        budget = round_budget(cfg, bar.n)
        saw_early = False
        for s in range(20):
            out = run_guess(ProbedView(bar), barbell_bridge(6), 100.0, cfg, seed=s)
            assert out.rounds_run <= budget
            if not out.accepted and out.rounds_run < budget:
                saw_early = True
        assert saw_early

    def test_invalid_edge(self):
        g = barbell(4)
        with pytest.raises(InvalidEdgeError):
            run_guess(ProbedView(g), EdgeRef(0, 7), 2.0, TesterConfig(), seed=0)

    def test_invalid_guess(self):
        g = complete(4)
        with pytest.raises(ValueError):
            run_guess(ProbedView(g), EdgeRef(0, 1), 0.0, TesterConfig(), seed=0)

    def test_unknown_engine(self):
        g = complete(4)
        with pytest.raises(ValueError):
            run_guess(ProbedView(g), EdgeRef(0, 1), 2.0, TesterConfig(), seed=0, engine="nope")

    def test_rounds_override_runs_fewer_rounds(self):
        g = complete(8)
        cfg = TesterConfig(rounds_override=2)
        out = run_guess(ProbedView(g), EdgeRef(0, 1), 2.0, cfg, seed=0)
        assert out.rounds_run == 2
