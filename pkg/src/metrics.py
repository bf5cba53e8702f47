"""Performance metrics tracking for exact-algebra computations."""

from collections import defaultdict
from contextlib import contextmanager
from typing import Dict, List, Any
import time


class PerformanceMetrics:
    """Track operation latencies and work counters."""

    def __init__(self):
        self.latencies: Dict[str, List[float]] = defaultdict(list)
        self.counters: Dict[str, int] = defaultdict(int)
        self.start_time = time.time()

    def record_latency(self, operation: str, latency_ms: float):
        """Record operation latency in milliseconds."""
        self.latencies[operation].append(latency_ms)

    def record_counter(self, name: str, amount: int = 1):
        """Add to a work counter (obstructions, rewrite steps, PD tests, ...)."""
        self.counters[name] += amount

    @contextmanager
    def timed(self, operation: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.record_latency(operation, (time.perf_counter() - start) * 1000)

    def get_summary(self) -> Dict[str, Any]:
        """Calculate and return performance summary."""
        summary = {
            "latencies": {},
            "counters": dict(sorted(self.counters.items())),
            "total_runtime_seconds": time.time() - self.start_time
        }

        # Calculate percentiles for each operation
        for op, values in sorted(self.latencies.items()):
            if values:
                sorted_vals = sorted(values)
                n = len(sorted_vals)
                summary["latencies"][op] = {
                    "p50": sorted_vals[n // 2],
                    "p95": sorted_vals[int(n * 0.95)] if n > 20 else sorted_vals[-1],
                    "p99": sorted_vals[int(n * 0.99)] if n > 100 else sorted_vals[-1],
                    "avg": sum(values) / len(values),
                    "min": min(values),
                    "max": max(values),
                    "count": len(values)
                }

        return summary

    def merge(self, other: "PerformanceMetrics"):
        for op, values in other.latencies.items():
            self.latencies[op].extend(values)
        for name, count in other.counters.items():
            self.counters[name] += count

    def print_summary(self, file=None):
        """Print latency and counter statistics."""
        summary = self.get_summary()
        print(f"\n{'='*60}", file=file)
        print("Performance Summary", file=file)
        print(f"{'='*60}", file=file)
        for op, stats in summary["latencies"].items():
            print(f"  {op:30s} {stats['avg']:10.3f}ms avg  ({stats['count']} calls)", file=file)
        for name, count in summary["counters"].items():
            print(f"  {name:30s} {count:>10,}", file=file)
        print(f"{'='*60}\n", file=file)
