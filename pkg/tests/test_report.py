from generate_report import load_results, results_frame


def test_results_frame_sorts_and_joins_memory():
    results = {
        "results": [
            {"criterion": 9, "name": "soft_hard_dichotomy", "passed": True, "runtime_seconds": 0.4, "details": {}},
            {"criterion": 6, "name": "toeplitz_gap", "passed": False, "runtime_seconds": 0.1,
             "details": {"error": "ConstructionError: boom"}},
        ],
        "aggregate_metrics": {"memory_by_criterion": {"toeplitz_gap": {"rss_delta_mb": 1.5}}},
    }
    frame = results_frame(results)
    assert list(frame["criterion"]) == [6, 9]
    assert list(frame["rss_delta_mb"]) == [1.5, 0.0]
    assert frame.loc[0, "error"] == "ConstructionError: boom"


def test_load_results_missing_or_broken(tmp_path):
    assert load_results(tmp_path / "absent.json") is None
    broken = tmp_path / "acceptance.json"
    broken.write_text("{")
    assert load_results(broken) is None
