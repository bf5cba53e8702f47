"""Process memory and CPU, sampled once after every acceptance criterion."""

import os
import time
from dataclasses import dataclass
from typing import Dict, List, Optional

import psutil


@dataclass
class CriterionSnapshot:
    """Process state right after one criterion finished."""
    label: str
    elapsed_seconds: float
    cpu_percent: float
    rss_mb: float
    rss_delta_mb: float
    num_threads: int


class SystemMetricsCollector:
    """Tracks how much memory each criterion left behind in this process."""

    def __init__(self):
        self.process = psutil.Process(os.getpid())
        self.snapshots: List[CriterionSnapshot] = []
        self.start_time: Optional[float] = None
        self.baseline_rss_mb = 0.0

    def _rss_mb(self) -> float:
        return self.process.memory_info().rss / 1024 / 1024

    def start_collection(self):
        self.start_time = time.time()
        self.baseline_rss_mb = self._rss_mb()
        # first call primes psutil's CPU counter
        self.process.cpu_percent(interval=None)

    def collect_snapshot(self, label: str = "") -> CriterionSnapshot:
        with self.process.oneshot():
            rss = self._rss_mb()
            cpu = self.process.cpu_percent(interval=None)
            threads = self.process.num_threads()
        previous = self.snapshots[-1].rss_mb if self.snapshots else self.baseline_rss_mb
        snapshot = CriterionSnapshot(
            label=label,
            elapsed_seconds=time.time() - (self.start_time or time.time()),
            cpu_percent=cpu,
            rss_mb=rss,
            rss_delta_mb=rss - previous,
            num_threads=threads,
        )
        self.snapshots.append(snapshot)
        return snapshot

    def get_summary(self) -> Dict:
        """Peak and final memory plus a per-criterion breakdown; empty before any snapshot."""
        if not self.snapshots:
            return {}
        rss = [s.rss_mb for s in self.snapshots]
        return {
            "duration_seconds": self.snapshots[-1].elapsed_seconds,
            "cpu": {
                "max_percent": max(s.cpu_percent for s in self.snapshots),
                "num_cores": psutil.cpu_count(logical=True) or 0,
            },
            "memory": {
                "baseline_rss_mb": self.baseline_rss_mb,
                "max_rss_mb": max(rss),
                "final_rss_mb": rss[-1],
            },
            "by_criterion": {
                s.label: {"rss_mb": s.rss_mb, "rss_delta_mb": s.rss_delta_mb, "cpu_percent": s.cpu_percent}
                for s in self.snapshots
            },
            "snapshots_collected": len(self.snapshots),
        }
