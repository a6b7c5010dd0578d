from __future__ import annotations

import random

from tutteplane.verify import CHECKS, SUITES, CheckResult, check_transitivity, run_suite


def test_suites_are_registered():
    assert set(SUITES) == set(CHECKS)
    assert all(CHECKS[s] for s in SUITES)


def test_check_result_keeps_a_few_failures():
    res = CheckResult("demo")
    for i in range(10):
        res.record(i % 2 == 0, f"case {i}")
    assert (res.passed, res.total, res.ok) == (5, 10, False)
    assert len(res.failures) == 5


def test_seeded_checks_are_reproducible():
    a = check_transitivity(random.Random("s"), 4)
    b = check_transitivity(random.Random("s"), 4)
    assert (a.passed, a.total) == (b.passed, b.total) == (50, 50)


def test_atlas_suite_passes():
    results = run_suite("atlas")
    assert results and all(r.ok for r in results)
