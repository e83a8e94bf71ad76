"""
Сопоставление вершин по коэффициентам дельта-функций:
линейное назначение (Jonker-Volgenant), ближайший сосед или sort-greedy.
"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, Optional, Union

import numpy as np
import pytz
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from src.config import config
from src.core.functional_map import DiagonalMap
from src.core.graph import NodePermutation
from src.errors import AssignmentError

MATCHERS = ("jv", "nn", "greedy")


@dataclass(frozen=True)
class CostMatrix:
    """Матрица n×n неотрицательных стоимостей: values[i, u] - расстояние между i из G1 и u из G2."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise AssignmentError(f"Cost matrix must be square, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise AssignmentError("Cost matrix contains non-finite entries")
        if np.any(values < 0):
            raise AssignmentError("Cost matrix contains negative entries")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])


@dataclass
class Alignment:
    """
    Отображение вершин: mapping[i] - вершина G2 для вершины i из G1.

    provenance хранит параметры, зерно, время работы и метку времени создания.
    """

    mapping: np.ndarray
    total_cost: float
    method: str
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.mapping.shape[0])

    def is_bijection(self) -> bool:
        return bool(np.array_equal(np.sort(self.mapping), np.arange(self.n)))

    def stamp(self, **details: Any) -> "Alignment":
        """Дополняет provenance и ставит метку времени в часовом поясе из конфигурации."""
        tz = pytz.timezone(config.TIMEZONE)
        self.provenance.update(details)
        self.provenance["created_at"] = datetime.now(tz).isoformat()
        return self


CostLike = Union[CostMatrix, np.ndarray]


def _as_cost(cost: CostLike) -> CostMatrix:
    return cost if isinstance(cost, CostMatrix) else CostMatrix(np.asarray(cost))


def build_cost(phi: np.ndarray, psi_hat: np.ndarray, cmap: DiagonalMap) -> CostMatrix:
    """
    cost[i, u] = ||phi_i - c * psi_hat_u||^2 (строки Psi_hat масштабируются диагональю C).

    Args:
        phi: Коэффициенты дельта-функций первого графа n×k
        psi_hat: Повёрнутые коэффициенты второго графа n×k
        cmap: Диагональ отображения длины k

    Returns:
        CostMatrix: Матрица стоимостей
    """
    if phi.shape != psi_hat.shape:
        raise AssignmentError(f"Coefficient matrices differ in shape: {phi.shape} vs {psi_hat.shape}")
    if cmap.k != phi.shape[1]:
        raise AssignmentError(f"Diagonal map has length {cmap.k}, expected {phi.shape[1]}")
    return CostMatrix(cdist(phi, psi_hat * cmap.c, metric="sqeuclidean"))


def solve_jv(cost: CostLike) -> Alignment:
    """
    Биекция минимальной суммарной стоимости (модифицированный алгоритм Jonker-Volgenant из scipy).

    Args:
        cost: Квадратная матрица стоимостей

    Returns:
        Alignment: Оптимальное назначение
    """
    cost = _as_cost(cost)
    rows, cols = linear_sum_assignment(cost.values)
    mapping = np.empty(cost.n, dtype=np.int64)
    mapping[rows] = cols
    return Alignment(mapping=mapping, total_cost=float(cost.values[rows, cols].sum()), method="jv")


def solve_nn(cost: CostLike) -> Alignment:
    """
    Ближайший сосед по строкам: mapping[i] = argmin_u cost[i, u], при равенстве - меньший u.
    Инъективность не гарантируется.
    """
    cost = _as_cost(cost)
    mapping = np.argmin(cost.values, axis=1).astype(np.int64)
    total = float(cost.values[np.arange(cost.n), mapping].sum())
    return Alignment(mapping=mapping, total_cost=total, method="nn")


def solve_greedy(cost: CostLike) -> Alignment:
    """
    Sort-greedy: пары (i, u) перебираются по возрастанию стоимости
    (равные - в построчном порядке), пара принимается, если обе вершины свободны.
    """
    cost = _as_cost(cost)
    n = cost.n
    order = np.argsort(cost.values, axis=None, kind="stable")
    mapping = np.full(n, -1, dtype=np.int64)
    taken = np.zeros(n, dtype=bool)
    assigned = 0
    for flat in order:
        i, u = divmod(int(flat), n)
        if mapping[i] >= 0 or taken[u]:
            continue
        mapping[i] = u
        taken[u] = True
        assigned += 1
        if assigned == n:
            break
    total = float(cost.values[np.arange(n), mapping].sum())
    return Alignment(mapping=mapping, total_cost=total, method="greedy")


def match(cost: CostLike, method: str) -> Alignment:
    """Запускает сопоставление выбранным методом."""
    if method == "jv":
        return solve_jv(cost)
    if method == "nn":
        return solve_nn(cost)
    if method == "greedy":
        return solve_greedy(cost)
    raise AssignmentError(f"Unknown matcher '{method}', expected one of {', '.join(MATCHERS)}")


def accuracy(a: Alignment, truth: Union[NodePermutation, np.ndarray]) -> float:
    """
    Доля вершин, сопоставленных так же, как в эталоне.

    Args:
        a: Найденное выравнивание
        truth: Эталонная перестановка

    Returns:
        float: Значение в [0, 1]
    """
    expected = truth.mapping if isinstance(truth, NodePermutation) else np.asarray(truth)
    if expected.shape[0] != a.n:
        raise AssignmentError(f"Alignment has {a.n} nodes, ground truth has {expected.shape[0]}")
    if a.n == 0:
        return 0.0
    return float(np.count_nonzero(a.mapping == expected)) / a.n
