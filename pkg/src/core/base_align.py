"""
Выравнивание базисов: поиск ортогональной матрицы M (k×k), которая
поворачивает усечённый собственный базис второго графа к базису первого.

Минимизируется off(M^T Lambda2 M) + mu * ||P - Q M||_F^2, где P = F^T Phi, Q = G^T Psi.
Оптимизатор - риманов градиентный спуск на O(k) с QR-ретракцией и правилом Армихо.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.config import config
from src.errors import BaseAlignError
from src.logger import logger

DEFAULT_MU = 0.132
ARMIJO_C = 1e-4
MAX_BACKTRACKS = 60
DRIFT_TOL = 1e-10


@dataclass(frozen=True)
class AlignObjectiveInputs:
    """Данные задачи выравнивания базисов."""

    lambda2: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    mu: float = DEFAULT_MU

    def __post_init__(self) -> None:
        lambda2 = np.asarray(self.lambda2, dtype=np.float64).ravel()
        P = np.atleast_2d(np.asarray(self.P, dtype=np.float64))
        Q = np.atleast_2d(np.asarray(self.Q, dtype=np.float64))
        k = lambda2.shape[0]
        if P.shape != Q.shape:
            raise BaseAlignError(f"P{P.shape} and Q{Q.shape} differ in shape")
        if P.shape[1] != k:
            raise BaseAlignError(f"P has {P.shape[1]} columns, expected k={k}")
        if self.mu < 0:
            raise BaseAlignError(f"mu must be non-negative, got {self.mu}")
        object.__setattr__(self, "lambda2", lambda2)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)

    @property
    def k(self) -> int:
        return int(self.lambda2.shape[0])


@dataclass
class BaseRotation:
    """Результат оптимизации поворота."""

    M: np.ndarray
    objective_trace: List[float] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0

    @property
    def initial_objective(self) -> float:
        return self.objective_trace[0]

    @property
    def final_objective(self) -> float:
        return self.objective_trace[-1]


def off(X: np.ndarray) -> float:
    """Сумма квадратов внедиагональных элементов."""
    return float(np.sum(np.square(X)) - np.sum(np.square(np.diag(X))))


def _check_rotation(inputs: AlignObjectiveInputs, M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.shape != (inputs.k, inputs.k):
        raise BaseAlignError(f"M has shape {M.shape}, expected ({inputs.k}, {inputs.k})")
    return M


def objective(inputs: AlignObjectiveInputs, M: np.ndarray) -> float:
    """
    Значение целевой функции off(M^T Lambda M) + mu * ||P - Q M||_F^2.

    Args:
        inputs: Данные задачи
        M: Матрица k×k

    Returns:
        float: Значение
    """
    M = _check_rotation(inputs, M)
    X = M.T @ (inputs.lambda2[:, None] * M)
    coupling = inputs.P - inputs.Q @ M
    return off(X) + inputs.mu * float(np.sum(np.square(coupling)))


def gradient(inputs: AlignObjectiveInputs, M: np.ndarray) -> np.ndarray:
    """
    Евклидов градиент: 4 Lambda M (X - Diag(X)) + 2 mu Q^T (Q M - P), X = M^T Lambda M.

    Args:
        inputs: Данные задачи
        M: Матрица k×k

    Returns:
        np.ndarray: Градиент k×k
    """
    M = _check_rotation(inputs, M)
    LM = inputs.lambda2[:, None] * M
    X = M.T @ LM
    X_off = X - np.diag(np.diag(X))
    return 4.0 * LM @ X_off + 2.0 * inputs.mu * inputs.Q.T @ (inputs.Q @ M - inputs.P)


def riemannian_gradient(inputs: AlignObjectiveInputs, M: np.ndarray) -> np.ndarray:
    """Проекция евклидова градиента на касательное пространство O(k) в точке M."""
    G = gradient(inputs, M)
    A = M.T @ G
    return M @ (0.5 * (A - A.T))


def qr_retraction(Y: np.ndarray) -> np.ndarray:
    """
    Возвращает матрицу на многообразие: ортогональный множитель QR-разложения
    с положительной диагональю R.
    """
    Q, R = np.linalg.qr(Y)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


def orthogonality_drift(M: np.ndarray) -> float:
    return float(np.linalg.norm(M.T @ M - np.eye(M.shape[1])))


def sign_initialize(inputs: AlignObjectiveInputs) -> np.ndarray:
    """
    Начальная диагональная матрица знаков:
    M_ii = +1, если ||P_i - Q_i|| <= ||P_i + Q_i||, иначе -1 (равенство даёт +1).

    Args:
        inputs: Данные задачи

    Returns:
        np.ndarray: Диагональная матрица k×k из ±1
    """
    minus = np.linalg.norm(inputs.P - inputs.Q, axis=0)
    plus = np.linalg.norm(inputs.P + inputs.Q, axis=0)
    return np.diag(np.where(minus <= plus, 1.0, -1.0))


def optimize_rotation(
    inputs: AlignObjectiveInputs,
    max_iterations: Optional[int] = None,
    grad_tol: Optional[float] = None,
    initial: Optional[np.ndarray] = None
) -> BaseRotation:
    """
    Риманов градиентный спуск по O(k) от знаковой инициализации.

    Шаг подбирается дроблением (Армихо); после каждого принятого шага матрица
    остаётся ортогональной. Останов по норме риманова градиента или по числу итераций.

    Args:
        inputs: Данные задачи
        max_iterations: Предел итераций (по умолчанию из конфигурации)
        grad_tol: Порог нормы градиента (по умолчанию из конфигурации)
        initial: Начальная точка (по умолчанию sign_initialize)

    Returns:
        BaseRotation: Найденная матрица и история целевой функции
    """
    max_iterations = config.ROTATION_MAX_ITERATIONS if max_iterations is None else max_iterations
    grad_tol = config.ROTATION_GRAD_TOL if grad_tol is None else grad_tol

    M = sign_initialize(inputs) if initial is None else _check_rotation(inputs, initial).copy()
    value = objective(inputs, M)
    result = BaseRotation(M=M, objective_trace=[value])

    step = 1.0
    for iteration in range(max_iterations):
        direction = riemannian_gradient(inputs, M)
        norm_sq = float(np.sum(np.square(direction)))
        if np.sqrt(norm_sq) <= grad_tol:
            result.converged = True
            break

        accepted = False
        step = min(2.0 * step, 1e6)
        for _ in range(MAX_BACKTRACKS):
            candidate = qr_retraction(M - step * direction)
            candidate_value = objective(inputs, candidate)
            if candidate_value <= value - ARMIJO_C * step * norm_sq:
                accepted = True
                break
            step *= 0.5

        if not accepted:
            # Шаг выродился: дальше без потери монотонности не сдвинуться
            logger.debug(f"Line search stalled at iteration {iteration}")
            break

        if orthogonality_drift(candidate) > DRIFT_TOL:
            candidate = qr_retraction(candidate)
            candidate_value = objective(inputs, candidate)
            if candidate_value > value:
                logger.debug(f"Re-retraction raised the objective at iteration {iteration}")
                break

        M, value = candidate, candidate_value
        result.objective_trace.append(value)
        result.iterations = iteration + 1
    else:
        # Последняя проверка после исчерпания итераций
        final_norm = float(np.linalg.norm(riemannian_gradient(inputs, M)))
        result.converged = final_norm <= grad_tol

    result.M = M
    logger.debug(
        f"Base alignment: k={inputs.k}, iterations={result.iterations}, converged={result.converged}, "
        f"objective {result.initial_objective:.6g} -> {result.final_objective:.6g}"
    )
    return result


def unrotated(inputs: AlignObjectiveInputs) -> BaseRotation:
    """Вариант без выравнивания базисов: только знаковая инициализация."""
    M = sign_initialize(inputs)
    return BaseRotation(M=M, objective_trace=[objective(inputs, M)], converged=True, iterations=0)
