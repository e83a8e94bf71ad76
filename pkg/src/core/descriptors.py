"""
Соответствующие функции: диагонали теплового ядра на сетке времён
и коэффициенты дельта-функций вершин.
"""

from dataclasses import dataclass

import numpy as np

from src.core.spectral import Spectrum
from src.errors import DescriptorError

DEFAULT_T_MIN = 0.1
DEFAULT_T_MAX = 50.0
DEFAULT_Q = 100


@dataclass(frozen=True)
class TimeGrid:
    """Строго возрастающая сетка положительных времён диффузии."""

    t: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=np.float64).ravel()
        if t.size == 0:
            raise DescriptorError("Time grid is empty")
        if np.any(t <= 0):
            raise DescriptorError("Diffusion times must be positive")
        if np.any(np.diff(t) <= 0):
            raise DescriptorError("Diffusion times must be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "t", t)

    @property
    def q(self) -> int:
        return int(self.t.shape[0])

    @classmethod
    def linear(cls, t_min: float = DEFAULT_T_MIN, t_max: float = DEFAULT_T_MAX, q: int = DEFAULT_Q) -> "TimeGrid":
        """Равномерная сетка на [t_min, t_max]."""
        _check_bounds(t_min, t_max, q)
        return cls(np.linspace(t_min, t_max, q))

    @classmethod
    def logarithmic(cls, t_min: float = DEFAULT_T_MIN, t_max: float = DEFAULT_T_MAX, q: int = DEFAULT_Q) -> "TimeGrid":
        """Равномерная в логарифмической шкале сетка на [t_min, t_max]."""
        _check_bounds(t_min, t_max, q)
        return cls(np.geomspace(t_min, t_max, q))

    @classmethod
    def build(cls, t_min: float, t_max: float, q: int, scale: str = "linear") -> "TimeGrid":
        if scale == "linear":
            return cls.linear(t_min, t_max, q)
        if scale == "log":
            return cls.logarithmic(t_min, t_max, q)
        raise DescriptorError(f"Unknown time scale '{scale}'")


def _check_bounds(t_min: float, t_max: float, q: int) -> None:
    if q < 1:
        raise DescriptorError(f"q must be at least 1, got {q}")
    if not 0 < t_min < t_max:
        raise DescriptorError(f"Need 0 < t_min < t_max, got [{t_min}, {t_max}]")


@dataclass(frozen=True)
class Descriptors:
    """Матрица n×q: столбец i - диагональ теплового ядра в момент t_i."""

    values: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def q(self) -> int:
        return int(self.values.shape[1])

    def heat_trace(self) -> np.ndarray:
        """Суммы по столбцам (след усечённого теплового ядра)."""
        return self.values.sum(axis=0)


def heat_diagonals(s: Spectrum, grid: TimeGrid) -> Descriptors:
    """
    values[u, i] = sum_j exp(-t_i * lambda_j) * phi_{uj}^2 по первым k парам.

    Args:
        s: Спектр
        grid: Сетка времён

    Returns:
        Descriptors: Соответствующие функции графа
    """
    decay = np.exp(-np.outer(s.eigenvalues, grid.t))
    return Descriptors(np.square(s.eigenvectors) @ decay)


def delta_coefficients(s: Spectrum) -> np.ndarray:
    """
    Коэффициенты индикаторов вершин в усечённом базисе.
    Строка u - разложение дельта-функции вершины u, то есть строка u матрицы собственных векторов.

    Args:
        s: Спектр

    Returns:
        np.ndarray: Матрица n×k
    """
    return np.array(s.eigenvectors, copy=True)


def project(desc: Descriptors, basis: np.ndarray) -> np.ndarray:
    """
    Проекция соответствующих функций на базис: F^T Phi (матрица q×k).

    Args:
        desc: Соответствующие функции n×q
        basis: Базис n×k

    Returns:
        np.ndarray: Коэффициенты q×k
    """
    if basis.shape[0] != desc.n:
        raise DescriptorError(f"Basis has {basis.shape[0]} rows, descriptors have {desc.n}")
    return desc.values.T @ basis
