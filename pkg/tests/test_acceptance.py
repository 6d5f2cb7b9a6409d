"""One line per acceptance criterion, repeated in the pytest terminal summary."""

import pytest

from torusindex.acceptance import CRITERIA, run_all

LINES = []


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all(order=6, seed=7)}


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    LINES.append(r.line())
    assert r.passed, r.details
    assert r.within_budget, f"{r.seconds:.1f}s exceeds {r.budget}s"
