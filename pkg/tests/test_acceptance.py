"""Acceptance gate: eight criteria, one reported pass/fail line each.

Each criterion prints ``ACCEPTANCE <k> <name>: PASS/FAIL (wall Xs)`` so a
plain pytest run doubles as the acceptance report.  Statistical criteria
use the contract sample sizes and tolerances; wall-clock targets are
reported but not asserted (they depend on the host).
"""

import time

import pytest

from lscg.generators import complete, gnp
from lscg.suites import (
    endtoend_suite,
    lemmas_suite,
    oracle_suite,
    scaling_experiment,
    skeleton_suite,
    sparsify_suite,
    tester_suite,
)
from lscg.tester import TesterConfig

SEED = 0


def report(number: int, name: str, passed: bool, wall: float, details: str = ""):
    status = "PASS" if passed else "FAIL"
    suffix = f"  {details}" if details else ""
    print(f"\nACCEPTANCE {number} {name}: {status} (wall {wall:.1f}s){suffix}", flush=True)
    assert passed, f"criterion {number} ({name}) failed: {details}"


def check_summary(checks) -> str:
    return "; ".join(f"{c.name}={'ok' if c.passed else 'FAIL'}" for c in checks)


@pytest.fixture(scope="module")
def endtoend_checks():
    start = time.monotonic()
    checks = endtoend_suite(seed=SEED, seeds=50)
    wall = time.monotonic() - start
    return checks, wall


def test_criterion_1_oracle_equivalence():
    start = time.monotonic()
    checks = oracle_suite(seed=SEED, graphs=200)
    report(
        1,
        "oracle_equivalence",
        all(c.passed for c in checks),
        time.monotonic() - start,
        check_summary(checks),
    )


def test_criterion_2_lemma_suite():
    start = time.monotonic()
    checks = lemmas_suite(seed=SEED, graphs=100)
    report(
        2,
        "lemma_suite",
        all(c.passed for c in checks),
        time.monotonic() - start,
        check_summary(checks),
    )


def test_criterion_3_skeleton_fidelity():
    start = time.monotonic()
    checks = skeleton_suite(seed=SEED, keys=100, freq_keys=10_000)
    report(
        3,
        "skeleton_fidelity",
        all(c.passed for c in checks),
        time.monotonic() - start,
        check_summary(checks),
    )


def test_criterion_4_tester_calibration():
    start = time.monotonic()
    checks = tester_suite(seed=SEED, seeds=100)
    report(
        4,
        "tester_calibration",
        all(c.passed for c in checks),
        time.monotonic() - start,
        check_summary(checks),
    )


def test_criterion_5_end_to_end(endtoend_checks):
    checks, wall = endtoend_checks
    wanted = {"subgraph_connected", "subgraph_size", "tree_kept_verbatim", "star_kept_verbatim"}
    mine = [c for c in checks if c.name in wanted]
    assert len(mine) == len(wanted)
    report(
        5,
        "end_to_end_lscg",
        all(c.passed for c in mine),
        wall,
        check_summary(mine),
    )


def test_criterion_6_probe_scaling():
    start = time.monotonic()
    tester = TesterConfig(d=2, c_scale=1.0)
    g512 = gnp(512, 0.25, seed=SEED + 1)
    rows = scaling_experiment(g512, [16.0, 64.0, 256.0], tester, seed=SEED, num_edges=200)
    means = [r["mean_probes"] for r in rows]
    nonincreasing = all(means[i + 1] <= means[i] for i in range(len(means) - 1))
    halved = means[2] <= 0.5 * means[0]

    k64 = complete(64)
    rows64 = scaling_experiment(k64, [4.0, 16.0], tester, seed=SEED, num_edges=200)
    saturated = rows64[0]["mean_probes"] <= 1.5 * rows64[1]["mean_probes"]
    report(
        6,
        "probe_scaling",
        nonincreasing and halved and saturated,
        time.monotonic() - start,
        f"G512 means={[round(m, 1) for m in means]} "
        f"K64 means={[round(r['mean_probes'], 1) for r in rows64]}",
    )


def test_criterion_7_sparsification():
    start = time.monotonic()
    checks = sparsify_suite(seed=SEED, trials=200)
    report(
        7,
        "sparsification",
        all(c.passed for c in checks),
        time.monotonic() - start,
        check_summary(checks),
    )


def test_criterion_8_consistency(endtoend_checks):
    checks, _ = endtoend_checks
    start = time.monotonic()
    wanted = {"materialize_repeatable", "query_order_invariant"}
    mine = [c for c in checks if c.name in wanted]
    assert len(mine) == len(wanted)
    report(
        8,
        "consistency_contract",
        all(c.passed for c in mine),
        time.monotonic() - start,
        check_summary(mine),
    )
