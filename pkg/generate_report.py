#!/usr/bin/env python3
"""Generate a per-criterion report from acceptance_results/acceptance.json."""

import json
import sys
from pathlib import Path
from typing import Dict, Any, Optional
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from src.config import load_config
from src.errors import ConfigError


def load_results(results_path: Path) -> Optional[Dict[str, Any]]:
    """Load acceptance JSON file."""
    try:
        with open(results_path, 'r') as f:
            return json.load(f)
    except FileNotFoundError:
        print(f"Warning: {results_path} not found")
        return None
    except json.JSONDecodeError as e:
        print(f"Error: Invalid JSON in {results_path}: {e}")
        return None


def results_frame(results: Dict[str, Any]) -> pd.DataFrame:
    """One row per criterion."""
    memory = results.get("aggregate_metrics", {}).get("memory_by_criterion", {})
    rows = [{
        "criterion": r["criterion"],
        "name": r["name"],
        "passed": r["passed"],
        "runtime_seconds": r["runtime_seconds"],
        "rss_delta_mb": memory.get(r["name"], {}).get("rss_delta_mb", 0.0),
        "error": r.get("details", {}).get("error", ""),
    } for r in results.get("results", [])]
    frame = pd.DataFrame(rows, columns=["criterion", "name", "passed", "runtime_seconds", "rss_delta_mb", "error"])
    return frame.sort_values("criterion").reset_index(drop=True)


def generate_text_report(results: Dict[str, Any], frame: pd.DataFrame):
    """Print the per-criterion table and totals."""
    print("\n" + "="*80)
    print("ACCEPTANCE REPORT")
    print("="*80)

    config = results.get("configuration", {})
    print(f"\nRun: {results.get('test_name', '?')} at {results.get('timestamp', '?')}")
    print(f"Seed: {config.get('seed', '?')}   Workers: {config.get('num_workers', '?')}")

    print(f"\n{'#':>3}  {'Criterion':<32} {'Result':<8} {'Runtime':>10} {'RSS +MB':>9}")
    print("-"*80)
    for row in frame.itertuples():
        mark = "PASS" if row.passed else "FAIL"
        print(f"{row.criterion:>3}  {row.name:<32} {mark:<8} {row.runtime_seconds:>9.2f}s {row.rss_delta_mb:>9.1f}")
        if row.error:
            print(f"     {row.error}")

    passed = int(frame["passed"].sum()) if len(frame) else 0
    print(f"\nPassed: {passed}/{len(frame)}")
    if len(frame):
        slowest = frame.loc[frame["runtime_seconds"].idxmax()]
        print(f"Slowest: {slowest['name']} ({slowest['runtime_seconds']:.2f}s)")
        print(f"Total criterion time: {frame['runtime_seconds'].sum():.2f}s")
    print(f"Wall clock: {results.get('total_wall_clock_seconds', 0):.2f}s")
    print("\n" + "="*80 + "\n")


def generate_charts(frame: pd.DataFrame, output_dir: Path) -> Path:
    """Bar chart of criterion runtimes, coloured by outcome."""
    print("\n📊 Generating charts...")

    fig, ax = plt.subplots(figsize=(12, 6))
    colors = ['#2ca02c' if p else '#d62728' for p in frame["passed"]]
    bars = ax.bar([str(c) for c in frame["criterion"]], frame["runtime_seconds"], alpha=0.8, color=colors)
    ax.set_xlabel('Criterion')
    ax.set_ylabel('Runtime (seconds)')
    ax.set_title('Acceptance Criterion Runtimes', fontsize=14, fontweight='bold')
    ax.grid(axis='y', alpha=0.3)

    for bar in bars:
        height = bar.get_height()
        ax.text(bar.get_x() + bar.get_width()/2., height,
                f'{height:.1f}s',
                ha='center', va='bottom', fontsize=8)

    plt.tight_layout()

    chart_path = output_dir / "acceptance_runtimes.png"
    plt.savefig(chart_path, dpi=300, bbox_inches='tight')
    print(f"✓ Chart saved to {chart_path}")

    plt.close()
    return chart_path


def main():
    """Main entry point."""
    try:
        output_dir = load_config().output_dir
    except ConfigError as e:
        print(f"ERROR: {e}")
        return 2

    print("Loading acceptance results...")
    results = load_results(output_dir / "acceptance.json")

    if not results:
        print("\nError: No acceptance results found.")
        print("Please run the acceptance criteria first:")
        print("  python acceptance_test.py")
        return 1

    frame = results_frame(results)
    generate_text_report(results, frame)

    try:
        generate_charts(frame, output_dir)
    except Exception as e:
        print(f"Warning: Could not generate charts: {e}")

    print("✓ Report generation complete\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
