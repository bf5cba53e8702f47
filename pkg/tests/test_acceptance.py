"""Acceptance criteria. The oracle-heavy ones are marked slow; run them with -m slow."""

import pytest

from src.acceptance import CRITERIA, run_criterion
from src.metrics import PerformanceMetrics

SEED = 20240501


@pytest.mark.parametrize("n", [6, 8, 9, 10])
def test_fast_criteria(n):
    result = run_criterion(n, SEED)
    assert result.passed, result.details
    assert result.name == CRITERIA[n][0]


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7])
def test_slow_criteria(n):
    result = run_criterion(n, SEED)
    assert result.passed, result.details


def test_run_criterion_records_latency():
    metrics = PerformanceMetrics()
    result = run_criterion(8, SEED, metrics)
    assert metrics.get_summary()["latencies"][result.name]["count"] == 1
    data = result.to_dict()
    assert data["criterion"] == 8
    assert data["runtime_seconds"] >= 0


def test_criteria_are_seed_deterministic():
    assert run_criterion(9, 1).details == run_criterion(9, 1).details


def test_unknown_criterion():
    with pytest.raises(ValueError):
        run_criterion(99, SEED)
