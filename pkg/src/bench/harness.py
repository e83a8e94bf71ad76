"""
Бенчмарк по протоколу с зашумлением: исходный граф слегка зашумляется,
его переставленная копия зашумляется сильнее, затем пара выравнивается
и точность сравнивается с известной перестановкой.
"""

import multiprocessing
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.core.assignment import MATCHERS, accuracy
from src.core.graph import Graph, delete_edges, load_edge_list, permute, random_permutation
from src.core.pipeline import GraspParams, finish_alignment, prepare_pair
from src.errors import BenchError, GraspError, OutputError
from src.logger import logger
from src.utils.helpers import derive_seed, format_mean_table, on_off, write_truth_csv

DEFAULT_NOISE_LEVELS = (0.05, 0.10, 0.15, 0.20, 0.25)
DEFAULT_SOURCE_NOISE = 0.01
DEFAULT_TRIALS = 5

BENCH_COLUMNS = [
    "noise", "trial", "matcher", "base_align", "k", "q", "mu", "seed",
    "accuracy", "runtime_ms", "aligned_runtime_ms",
]

SWEEPABLE = ("k", "q")

Variant = Tuple[str, bool]


@dataclass
class BenchConfig:
    """Параметры эксперимента."""

    graph_path: Optional[str] = None
    noise_levels: List[float] = field(default_factory=lambda: list(DEFAULT_NOISE_LEVELS))
    source_noise: float = DEFAULT_SOURCE_NOISE
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    params: GraspParams = field(default_factory=GraspParams.from_config)
    variants: List[Variant] = field(default_factory=lambda: [("jv", True)])
    jobs: int = 1
    truth_dir: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.noise_levels:
            raise BenchError("At least one noise level is required")
        for p in list(self.noise_levels) + [self.source_noise]:
            if not 0.0 <= p <= 1.0:
                raise BenchError(f"Noise level {p} outside [0, 1]")
        if self.trials < 1:
            raise BenchError(f"trials must be at least 1, got {self.trials}")
        if not self.variants:
            raise BenchError("At least one variant is required")
        for matcher, _ in self.variants:
            if matcher not in MATCHERS:
                raise BenchError(f"Unknown matcher '{matcher}' in variants")
        if len(set(self.variants)) != len(self.variants):
            raise BenchError("Variants must be distinct")
        if self.jobs < 1:
            raise BenchError(f"jobs must be at least 1, got {self.jobs}")


@dataclass(frozen=True)
class BenchRow:
    noise: float
    trial: int
    matcher: str
    base_align: str
    k: int
    q: int
    mu: float
    seed: int
    accuracy: float
    runtime_ms: float
    aligned_runtime_ms: float


@dataclass
class BenchResult:
    """Строки результатов в детерминированном порядке (noise, trial, вариант)."""

    rows: List[BenchRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(row) for row in self.rows], columns=BENCH_COLUMNS)

    def write_csv(self, path: str) -> None:
        """Сохраняет результаты в CSV с заголовком BENCH_COLUMNS."""
        try:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            self.to_frame().to_csv(path, index=False)
        except OSError as e:
            raise OutputError(f"Cannot write {path}: {e}") from e

    def summary(self, by: Sequence[str] = ("noise", "matcher", "base_align")) -> pd.DataFrame:
        """Средняя точность по группам."""
        return self.to_frame().groupby(list(by), sort=True)["accuracy"].mean().reset_index()

    def format_summary(self, by: Sequence[str] = ("noise", "matcher", "base_align")) -> str:
        return format_mean_table(self.to_frame(), list(by))


@dataclass(frozen=True)
class _TrialTask:
    graph: Graph
    noise: float
    trial: int
    source_noise: float
    base_seed: int
    params: GraspParams
    variants: Tuple[Variant, ...]
    truth_dir: Optional[str]


def _run_trial(task: _TrialTask) -> List[BenchRow]:
    """
    Один повтор при одном уровне шума: строит пару графов и прогоняет все варианты.
    Варианты с одинаковым флагом выравнивания базисов используют общую подготовку (шаги 1-3).
    """
    source_seed = derive_seed(task.base_seed, 0.0, task.trial, "source")
    perm_seed = derive_seed(task.base_seed, task.noise, task.trial, "perm")
    target_seed = derive_seed(task.base_seed, task.noise, task.trial, "target")

    g1 = delete_edges(task.graph, task.source_noise, source_seed)
    truth = random_permutation(task.graph.n, perm_seed)
    g2 = delete_edges(permute(task.graph, truth), task.noise, target_seed)

    if task.truth_dir:
        write_truth_csv(Path(task.truth_dir) / f"truth_p{task.noise:g}_t{task.trial}.csv", truth.mapping)

    rows: List[BenchRow] = []
    for base_align in dict.fromkeys(flag for _, flag in task.variants):
        prepared = prepare_pair(g1, g2, replace(task.params, base_align=base_align))
        for matcher, flag in task.variants:
            if flag != base_align:
                continue
            alignment = finish_alignment(prepared, matcher)
            aligned_ms = float(alignment.provenance["aligned_ms"])
            rows.append(BenchRow(
                noise=task.noise,
                trial=task.trial,
                matcher=matcher,
                base_align=on_off(base_align),
                k=prepared.spectrum1.k,
                q=task.params.q,
                mu=task.params.mu,
                seed=target_seed,
                accuracy=accuracy(alignment, truth),
                runtime_ms=prepared.precompute_ms + aligned_ms,
                aligned_runtime_ms=aligned_ms
            ))

    logger.info(
        f"Trial done: p={task.noise:g}, trial={task.trial}, "
        + ", ".join(f"{row.matcher}/{row.base_align}={row.accuracy:.4f}" for row in rows)
    )
    return rows


def _load_graph(cfg: BenchConfig, graph: Optional[Graph]) -> Graph:
    if graph is not None:
        return graph
    if not cfg.graph_path:
        raise BenchError("No graph given: set graph_path or pass a Graph")
    return load_edge_list(cfg.graph_path)


def _run_tasks(tasks: List[_TrialTask], jobs: int) -> List[BenchRow]:
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=min(jobs, len(tasks))) as pool:
            chunks = pool.map(_run_trial, tasks)
    else:
        chunks = [_run_trial(task) for task in tasks]
    return [row for chunk in chunks for row in chunk]


def run_benchmark(cfg: BenchConfig, graph: Optional[Graph] = None) -> BenchResult:
    """
    Прогоняет все (noise, trial, вариант) и собирает точность и время.

    Args:
        cfg: Параметры эксперимента
        graph: Уже загруженный граф (иначе читается cfg.graph_path)

    Returns:
        BenchResult: Строки результатов
    """
    graph = _load_graph(cfg, graph)
    variants = tuple(cfg.variants)
    tasks = [
        _TrialTask(
            graph=graph,
            noise=float(noise),
            trial=trial,
            source_noise=cfg.source_noise,
            base_seed=cfg.seed,
            params=cfg.params,
            variants=variants,
            truth_dir=cfg.truth_dir
        )
        for noise in cfg.noise_levels
        for trial in range(cfg.trials)
    ]
    logger.info(
        f"Benchmark: n={graph.n}, edges={graph.num_edges}, noise={list(cfg.noise_levels)}, "
        f"trials={cfg.trials}, variants={len(variants)}, jobs={cfg.jobs}"
    )

    try:
        rows = _run_tasks(tasks, cfg.jobs)
    except GraspError:
        raise
    except Exception as e:
        raise BenchError(f"Benchmark failed: {e}") from e

    order = {variant: idx for idx, variant in enumerate(variants)}
    rows.sort(key=lambda row: (row.noise, row.trial, order[(row.matcher, row.base_align == "on")]))
    return BenchResult(rows=rows)


def run_param_sweep(
    cfg: BenchConfig,
    sweep: Dict[str, Sequence[int]],
    graph: Optional[Graph] = None
) -> BenchResult:
    """
    Повторяет бенчмарк для каждого значения одного параметра (k или q),
    остальные параметры и зерна не меняются.

    Args:
        cfg: Параметры эксперимента
        sweep: Словарь с одним ключом "k" или "q" и списком значений
        graph: Уже загруженный граф (необязательно)

    Returns:
        BenchResult: Объединённые строки по всем значениям
    """
    if len(sweep) != 1:
        raise BenchError(f"Sweep exactly one parameter, got {sorted(sweep)}")
    parameter, values = next(iter(sweep.items()))
    if parameter not in SWEEPABLE:
        raise BenchError(f"Cannot sweep '{parameter}', expected one of {', '.join(SWEEPABLE)}")
    if not values:
        raise BenchError("Sweep needs at least one value")

    graph = _load_graph(cfg, graph)
    result = BenchResult()
    for value in values:
        try:
            params = replace(cfg.params, **{parameter: int(value)})
        except GraspError as e:
            raise BenchError(f"Invalid sweep value {parameter}={value}: {e}") from e
        logger.info(f"Sweep {parameter}={value}")
        result.rows.extend(run_benchmark(replace(cfg, params=params), graph).rows)
    return result
