"""Worker processes for running acceptance criteria in parallel."""

import hashlib
import multiprocessing as mp
from typing import List, Dict, Any, Optional
from dataclasses import dataclass
from enum import Enum


class CriterionAssignment(Enum):
    """Criterion assignment modes."""
    ROUND_ROBIN = "round_robin"
    STICKY = "sticky"  # md5 of the criterion name
    LEAST_LOADED = "least_loaded"


@dataclass
class WorkerConfig:
    """Configuration for a worker process."""
    worker_id: int
    num_workers: int
    assignment_mode: CriterionAssignment
    seed: int
    log_level: str = "WARNING"


class CriterionAssigner:
    """Assigns criteria to workers."""

    def __init__(self, num_workers: int, mode: CriterionAssignment):
        if num_workers < 1:
            raise ValueError(f"num_workers must be positive, got {num_workers}")
        self.num_workers = num_workers
        self.mode = mode
        self.criterion_to_worker: Dict[int, int] = {}
        self.worker_loads: List[int] = [0] * num_workers

    def assign(self, criterion: int, name: str, weight: int = 1) -> int:
        """Assign a criterion to a worker; repeated calls return the same worker."""
        if criterion in self.criterion_to_worker:
            return self.criterion_to_worker[criterion]
        if self.mode == CriterionAssignment.ROUND_ROBIN:
            worker_id = len(self.criterion_to_worker) % self.num_workers
        elif self.mode == CriterionAssignment.STICKY:
            hash_val = int(hashlib.md5(name.encode()).hexdigest(), 16)
            worker_id = hash_val % self.num_workers
        elif self.mode == CriterionAssignment.LEAST_LOADED:
            worker_id = self.worker_loads.index(min(self.worker_loads))
        else:
            raise ValueError(f"Unknown assignment mode: {self.mode}")
        self.criterion_to_worker[criterion] = worker_id
        self.worker_loads[worker_id] += weight
        return worker_id

    def partition(self, criteria: Dict[int, str], weights: Optional[Dict[int, int]] = None) -> List[List[int]]:
        """Criteria per worker, heaviest first so least-loaded balances well."""
        weights = weights or {}
        order = sorted(criteria, key=lambda n: (-weights.get(n, 1), n))
        groups: List[List[int]] = [[] for _ in range(self.num_workers)]
        for n in order:
            groups[self.assign(n, criteria[n], weights.get(n, 1))].append(n)
        return [sorted(g) for g in groups]

    def get_load_balance_stats(self) -> Dict[str, Any]:
        """Get load balancing statistics."""
        loads = self.worker_loads
        return {
            "total_weight": sum(loads),
            "per_worker": loads,
            "min_load": min(loads),
            "max_load": max(loads),
            "avg_load": sum(loads) / len(loads),
            "imbalance_factor": max(loads) / (sum(loads) / len(loads)) if sum(loads) > 0 else 1.0
        }


class WorkerMetricsCollector:
    """Collect metrics from multiple workers."""

    def __init__(self):
        self.worker_metrics: Dict[int, Dict] = {}

    def add_worker_metrics(self, worker_id: int, metrics: Dict):
        """Add metrics from a worker."""
        self.worker_metrics[worker_id] = metrics

    def merged_results(self) -> List[Dict[str, Any]]:
        """Criterion results from every worker, sorted by criterion number."""
        results = [r for m in self.worker_metrics.values() for r in m.get('results', [])]
        return sorted(results, key=lambda r: r['criterion'])

    def get_aggregate_metrics(self) -> Dict[str, Any]:
        """Aggregate metrics across all workers."""
        if not self.worker_metrics:
            return {}

        workers = sorted(self.worker_metrics)
        peak_memory = [self.worker_metrics[i].get('system', {}).get('memory', {}).get('max_rss_mb', 0.0)
                       for i in workers]
        busy = [sum(r['runtime_seconds'] for r in self.worker_metrics[i].get('results', []))
                for i in workers]

        by_criterion = {}
        for i in workers:
            by_criterion.update(self.worker_metrics[i].get('system', {}).get('by_criterion', {}))

        return {
            'num_workers': len(workers),
            'total_memory_mb': sum(peak_memory),
            'per_worker_memory': peak_memory,
            'per_worker_busy_seconds': busy,
            'critical_path_seconds': max(busy) if busy else 0.0,
            'total_cpu_seconds': sum(busy),
            'memory_by_criterion': by_criterion
        }

    def get_worker_metrics(self, worker_id: int) -> Dict:
        """Get metrics for a specific worker."""
        return self.worker_metrics.get(worker_id, {})


def worker_process(worker_id: int, config: WorkerConfig, criteria: List[int],
                   result_queue: mp.Queue, error_queue: mp.Queue):
    """Worker process function - runs the criteria assigned to this worker."""
    try:
        import logging
        from src.acceptance import run_criterion
        from src.metrics import PerformanceMetrics
        from src.system_metrics import SystemMetricsCollector

        logging.basicConfig(level=getattr(logging, config.log_level, logging.WARNING))

        system_metrics = SystemMetricsCollector()
        system_metrics.start_collection()
        metrics = PerformanceMetrics()

        results = []
        for n in criteria:
            result = run_criterion(n, config.seed, metrics)
            system_metrics.collect_snapshot(result.name)
            results.append(result.to_dict())

        result_queue.put({
            'worker_id': worker_id,
            'criteria': list(criteria),
            'results': results,
            'performance': metrics.get_summary(),
            'system': system_metrics.get_summary()
        })

    except Exception as e:
        import traceback
        error_queue.put({
            'worker_id': worker_id,
            'error': str(e),
            'traceback': traceback.format_exc()
        })
