import pytest

from src.metrics import PerformanceMetrics
from src.system_metrics import SystemMetricsCollector
from src.worker_manager import CriterionAssigner, CriterionAssignment, WorkerMetricsCollector

CRITERIA = {n: f"criterion_{n}" for n in range(1, 11)}


def test_round_robin():
    assigner = CriterionAssigner(3, CriterionAssignment.ROUND_ROBIN)
    assert [assigner.assign(n, CRITERIA[n]) for n in (1, 2, 3, 4)] == [0, 1, 2, 0]
    assert assigner.assign(2, CRITERIA[2]) == 1


def test_sticky_is_stable():
    first = CriterionAssigner(4, CriterionAssignment.STICKY)
    second = CriterionAssigner(4, CriterionAssignment.STICKY)
    assert [first.assign(n, CRITERIA[n]) for n in CRITERIA] == [second.assign(n, CRITERIA[n]) for n in CRITERIA]


def test_least_loaded_partition_balances_weights():
    assigner = CriterionAssigner(2, CriterionAssignment.LEAST_LOADED)
    groups = assigner.partition({1: "a", 2: "b", 3: "c"}, {1: 4, 2: 2, 3: 2})
    assert groups == [[1], [2, 3]]
    stats = assigner.get_load_balance_stats()
    assert stats["per_worker"] == [4, 4]
    assert stats["imbalance_factor"] == 1.0


def test_partition_covers_every_criterion():
    groups = CriterionAssigner(3, CriterionAssignment.STICKY).partition(CRITERIA)
    assert sorted(n for g in groups for n in g) == sorted(CRITERIA)


def test_needs_a_worker():
    with pytest.raises(ValueError):
        CriterionAssigner(0, CriterionAssignment.ROUND_ROBIN)


def test_merged_results_and_aggregate():
    collector = WorkerMetricsCollector()
    assert collector.get_aggregate_metrics() == {}
    collector.add_worker_metrics(1, {
        "results": [{"criterion": 4, "runtime_seconds": 2.0}],
        "system": {"memory": {"max_rss_mb": 100.0}},
    })
    collector.add_worker_metrics(0, {
        "results": [{"criterion": 2, "runtime_seconds": 1.0}, {"criterion": 9, "runtime_seconds": 0.5}],
        "system": {"memory": {"max_rss_mb": 50.0}},
    })
    assert [r["criterion"] for r in collector.merged_results()] == [2, 4, 9]
    aggregate = collector.get_aggregate_metrics()
    assert aggregate["num_workers"] == 2
    assert aggregate["total_memory_mb"] == 150.0
    assert aggregate["critical_path_seconds"] == 2.0
    assert aggregate["total_cpu_seconds"] == 3.5
    assert aggregate["memory_by_criterion"] == {}
    assert collector.get_worker_metrics(7) == {}


def test_performance_metrics():
    metrics = PerformanceMetrics()
    with metrics.timed("reduce"):
        pass
    metrics.record_latency("reduce", 5.0)
    metrics.record_counter("rewrite_steps", 3)
    other = PerformanceMetrics()
    other.record_counter("rewrite_steps", 2)
    metrics.merge(other)
    summary = metrics.get_summary()
    assert summary["latencies"]["reduce"]["count"] == 2
    assert summary["latencies"]["reduce"]["max"] == 5.0
    assert summary["counters"] == {"rewrite_steps": 5}


def test_system_metrics_snapshots():
    collector = SystemMetricsCollector()
    assert collector.get_summary() == {}
    collector.start_collection()
    collector.collect_snapshot("first")
    collector.collect_snapshot("second")
    summary = collector.get_summary()
    assert summary["snapshots_collected"] == 2
    assert summary["memory"]["max_rss_mb"] > 0
    assert list(summary["by_criterion"]) == ["first", "second"]
    assert collector.snapshots[1].rss_delta_mb == collector.snapshots[1].rss_mb - collector.snapshots[0].rss_mb
