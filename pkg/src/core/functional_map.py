"""
Диагональная матрица отображения C, найденная методом наименьших квадратов.
"""

from dataclasses import dataclass

import numpy as np

from src.core.descriptors import Descriptors, project
from src.errors import FunctionalMapError
from src.logger import logger

DEGENERATE_NORM = 1e-12


@dataclass(frozen=True)
class DiagonalMap:
    """Диагональ c матрицы C, остаток задачи МНК и маска вырожденных столбцов."""

    c: np.ndarray
    residual: float
    degenerate: np.ndarray

    @property
    def k(self) -> int:
        return int(self.c.shape[0])

    @property
    def has_degenerate(self) -> bool:
        return bool(np.any(self.degenerate))


def solve_coefficients(a: np.ndarray, b: np.ndarray) -> DiagonalMap:
    """
    Решает min ||a * c - b||^2 по c для каждого столбца отдельно:
    c_j = sum_i a_ij b_ij / sum_i a_ij^2. Столбец с почти нулевой нормой даёт c_j = 0.

    Args:
        a: Матрица q×k коэффициентов второго графа
        b: Матрица q×k коэффициентов первого графа

    Returns:
        DiagonalMap: Решение
    """
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    b = np.atleast_2d(np.asarray(b, dtype=np.float64))
    if a.shape != b.shape:
        raise FunctionalMapError(f"Coefficient blocks differ in shape: {a.shape} vs {b.shape}")

    norms = np.sum(np.square(a), axis=0)
    degenerate = norms < DEGENERATE_NORM
    safe = np.where(degenerate, 1.0, norms)
    c = np.where(degenerate, 0.0, np.sum(a * b, axis=0) / safe)

    residual = float(np.sum(np.square(a * c - b)))
    if np.any(degenerate):
        logger.warning(f"Degenerate functional map columns: {np.flatnonzero(degenerate).tolist()}")
    return DiagonalMap(c=c, residual=residual, degenerate=degenerate)


def solve_diagonal_map(
    F_desc: Descriptors,
    G_desc: Descriptors,
    phi: np.ndarray,
    psi_hat: np.ndarray
) -> DiagonalMap:
    """
    Находит диагональ C из условия diag(g_i^T Psi_hat) c = Phi^T f_i для всех i.
    Система распадается по координатам, поэтому решается покоординатно.

    Args:
        F_desc: Соответствующие функции первого графа
        G_desc: Соответствующие функции второго графа
        phi: Базис первого графа n×k
        psi_hat: Повёрнутый базис второго графа n×k

    Returns:
        DiagonalMap: Диагональ отображения
    """
    if phi.shape != psi_hat.shape:
        raise FunctionalMapError(f"Bases differ in shape: {phi.shape} vs {psi_hat.shape}")
    if F_desc.q != G_desc.q:
        raise FunctionalMapError(f"Descriptor counts differ: {F_desc.q} vs {G_desc.q}")
    if F_desc.n != phi.shape[0] or G_desc.n != psi_hat.shape[0]:
        raise FunctionalMapError("Descriptor rows do not match basis rows")

    a = project(G_desc, psi_hat)
    b = project(F_desc, phi)
    return solve_coefficients(a, b)
