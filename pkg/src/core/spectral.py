"""
Спектральный модуль: нормализованный лапласиан и усечённое
симметричное разложение на собственные пары.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sps
import scipy.sparse.linalg as spla

from src.config import config
from src.core.graph import Graph
from src.errors import SpectralError
from src.logger import logger

SYMMETRY_TOL = 1e-10
DEGENERACY_GAP = 1e-10
ZERO_EIGENVALUE_TOL = 1e-9
ITERATIVE_TOL = 1e-8

Matrix = Union[np.ndarray, sps.spmatrix]


@dataclass(frozen=True)
class Spectrum:
    """
    Первые k собственных пар нормализованного лапласиана.

    eigenvalues - по возрастанию, eigenvectors - матрица n×k с ортонормированными столбцами,
    знак каждого столбца канонизирован (наибольший по модулю элемент положителен).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def k(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def n(self) -> int:
        return int(self.eigenvectors.shape[0])

    def zero_multiplicity(self, tol: float = ZERO_EIGENVALUE_TOL) -> int:
        """Число (почти) нулевых собственных значений среди вычисленных."""
        return int(np.count_nonzero(np.abs(self.eigenvalues) <= tol))

    def is_degenerate(self, gap: float = DEGENERACY_GAP) -> bool:
        """Есть ли соседние собственные значения ближе gap."""
        return bool(self.k > 1 and np.min(np.diff(self.eigenvalues)) < gap)


def normalized_laplacian(g: Graph) -> sps.csr_matrix:
    """
    Строит L = I - D^{-1/2} A D^{-1/2}.
    Для изолированной вершины элемент D^{-1/2} равен 0, поэтому её строка в L нулевая.

    Args:
        g: Граф

    Returns:
        sps.csr_matrix: Симметричная матрица n×n
    """
    if g.n < 1:
        raise SpectralError("Laplacian of an empty graph is undefined")

    degrees = g.degrees.astype(np.float64)
    inv_sqrt = np.zeros(g.n, dtype=np.float64)
    connected = degrees > 0
    inv_sqrt[connected] = 1.0 / np.sqrt(degrees[connected])

    scale = sps.diags(inv_sqrt)
    identity = sps.diags(connected.astype(np.float64))
    laplacian = identity - scale @ g.adjacency() @ scale
    return sps.csr_matrix(laplacian)


def canonicalize_signs(vectors: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """
    Делает положительным наибольший по модулю элемент каждого столбца.
    При равенстве модулей решает элемент с наименьшим индексом.

    Args:
        vectors: Матрица n×k
        tol: Допуск сравнения модулей

    Returns:
        np.ndarray: Матрица с канонизированными знаками
    """
    result = np.array(vectors, dtype=np.float64, copy=True)
    magnitudes = np.abs(result)
    for j in range(result.shape[1]):
        column = magnitudes[:, j]
        pivot = int(np.argmax(column >= column.max() - tol))
        if result[pivot, j] < 0:
            result[:, j] *= -1.0
    return result


def _asymmetry(L: Matrix) -> float:
    if sps.issparse(L):
        diff = (L - L.T).tocoo()
        return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
    return float(np.max(np.abs(L - L.T))) if L.size else 0.0


def eigendecompose(
    L: Matrix,
    k: int,
    dense_limit: Optional[int] = None
) -> Spectrum:
    """
    Находит k наименьших собственных пар симметричной матрицы.

    До dense_limit вершин используется плотное разложение (scipy.linalg.eigh),
    выше - итерационный метод Ланцоша (scipy.sparse.linalg.eigsh).

    Args:
        L: Симметричная матрица n×n (плотная или разреженная)
        k: Количество пар; если k > n, берётся n
        dense_limit: Порог размера для плотного пути (по умолчанию из конфигурации)

    Returns:
        Spectrum: Собственные пары по возрастанию
    """
    if k < 1:
        raise SpectralError(f"k must be at least 1, got {k}")
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise SpectralError(f"Expected a square matrix, got shape {L.shape}")

    asymmetry = _asymmetry(L)
    if asymmetry > SYMMETRY_TOL:
        raise SpectralError(f"Matrix is not symmetric (max asymmetry {asymmetry:.3e})")

    n = L.shape[0]
    k = min(k, n)
    limit = config.DENSE_EIGEN_LIMIT if dense_limit is None else dense_limit

    # eigsh требует k < n - 1, иначе всё равно нужен плотный путь
    if n <= limit or k >= n - 1:
        dense = L.toarray() if sps.issparse(L) else np.asarray(L, dtype=np.float64)
        values, vectors = sla.eigh(dense, subset_by_index=[0, k - 1])
    else:
        logger.debug(f"Using Lanczos eigensolver: n={n}, k={k}")
        # Детерминированный стартовый вектор
        v0 = np.random.default_rng(0).uniform(0.5, 1.5, size=n)
        try:
            values, vectors = spla.eigsh(
                sps.csr_matrix(L),
                k=k,
                which="SA",
                tol=ITERATIVE_TOL,
                maxiter=10 * n,
                v0=v0
            )
        except spla.ArpackNoConvergence as e:
            raise SpectralError(f"Lanczos solver did not converge for n={n}, k={k}: {e}") from e

    order = np.argsort(values, kind="stable")
    spectrum = Spectrum(
        eigenvalues=np.asarray(values[order], dtype=np.float64),
        eigenvectors=canonicalize_signs(vectors[:, order])
    )

    if spectrum.is_degenerate():
        logger.warning(f"Near-degenerate spectrum: eigenvalue gap below {DEGENERACY_GAP:g} (k={k})")
    zeros = spectrum.zero_multiplicity()
    if zeros > 1:
        logger.warning(f"Graph looks disconnected: {zeros} zero eigenvalues among the first {k}")

    return spectrum


def graph_spectrum(g: Graph, k: int, dense_limit: Optional[int] = None) -> Spectrum:
    """Спектр нормализованного лапласиана графа (шаг 1)."""
    return eigendecompose(normalized_laplacian(g), k, dense_limit=dense_limit)
