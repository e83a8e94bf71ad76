"""
Модуль бенчмарка.
"""

from src.bench.harness import BenchConfig, BenchResult, BenchRow, run_benchmark, run_param_sweep

__all__ = ["BenchConfig", "BenchResult", "BenchRow", "run_benchmark", "run_param_sweep"]
