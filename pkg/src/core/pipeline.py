"""
Пять шагов GRASP: собственные векторы, соответствующие функции,
выравнивание базисов, матрица отображения, сопоставление вершин.

Шаги 1-3 (prepare_pair) можно выполнить заранее и закэшировать,
шаги 4-5 (finish_alignment) зависят только от их результата и способа сопоставления.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional, Tuple

import numpy as np

from src.config import config
from src.core.assignment import MATCHERS, Alignment, build_cost, match
from src.core.base_align import AlignObjectiveInputs, BaseRotation, optimize_rotation, unrotated
from src.core.descriptors import Descriptors, TimeGrid, delta_coefficients, heat_diagonals, project
from src.core.functional_map import DiagonalMap, solve_diagonal_map
from src.core.graph import Graph
from src.core.spectral import Spectrum, graph_spectrum
from src.database.repository import SpectralCacheRepository
from src.errors import DescriptorError, ParameterError
from src.logger import logger


@dataclass(frozen=True)
class GraspParams:
    """Все гиперпараметры выравнивания."""

    k: int = 20
    q: int = 100
    t_min: float = 0.1
    t_max: float = 50.0
    mu: float = 0.132
    matcher: str = "jv"
    base_align: bool = True
    time_scale: str = "linear"
    full_descriptors: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ParameterError(f"k must be at least 1, got {self.k}")
        if self.q < 1:
            raise ParameterError(f"q must be at least 1, got {self.q}")
        if not 0 < self.t_min < self.t_max:
            raise ParameterError(f"Need 0 < t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if self.mu < 0:
            raise ParameterError(f"mu must be non-negative, got {self.mu}")
        if self.matcher not in MATCHERS:
            raise ParameterError(f"Unknown matcher '{self.matcher}', expected one of {', '.join(MATCHERS)}")
        if self.time_scale not in ("linear", "log"):
            raise ParameterError(f"Unknown time scale '{self.time_scale}'")

    @classmethod
    def from_config(cls, **overrides: Any) -> "GraspParams":
        """Параметры по умолчанию из конфигурации с заменой отдельных полей."""
        values = {
            "k": config.GRASP_K,
            "q": config.GRASP_Q,
            "t_min": config.GRASP_T_MIN,
            "t_max": config.GRASP_T_MAX,
            "mu": config.GRASP_MU,
            "matcher": config.GRASP_MATCHER,
            "base_align": config.GRASP_BASE_ALIGN,
            "time_scale": config.GRASP_TIME_SCALE,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def grid(self) -> TimeGrid:
        try:
            return TimeGrid.build(self.t_min, self.t_max, self.q, self.time_scale)
        except DescriptorError as e:
            raise ParameterError(str(e)) from e

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def descriptor_key(self) -> Dict[str, Any]:
        """Параметры, от которых зависят шаги 1-2."""
        return {
            "k": self.k,
            "q": self.q,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "time_scale": self.time_scale,
            "full_descriptors": self.full_descriptors,
        }

    def rotation_key(self) -> Dict[str, Any]:
        """Параметры, от которых зависит шаг 3."""
        key = self.descriptor_key()
        key.update({"mu": self.mu, "base_align": self.base_align})
        return key


@dataclass
class PreparedPair:
    """Результат шагов 1-3 для пары графов."""

    spectrum1: Spectrum
    spectrum2: Spectrum
    descriptors1: Descriptors
    descriptors2: Descriptors
    rotation: BaseRotation
    params: GraspParams
    precompute_ms: float = 0.0

    @property
    def phi(self) -> np.ndarray:
        return delta_coefficients(self.spectrum1)

    @property
    def psi_hat(self) -> np.ndarray:
        return delta_coefficients(self.spectrum2) @ self.rotation.M


def prepare_graph(
    g: Graph,
    params: GraspParams,
    cache: Optional[SpectralCacheRepository] = None
) -> Tuple[Spectrum, Descriptors]:
    """
    Шаги 1-2 для одного графа: спектр и диагонали теплового ядра.

    Args:
        g: Граф
        params: Параметры
        cache: Кэш (необязательно)

    Returns:
        Tuple[Spectrum, Descriptors]: Спектр и соответствующие функции
    """
    key = params.descriptor_key()
    if cache is not None:
        cached = cache.get_spectrum(g.fingerprint(), key)
        if cached is not None:
            eigenvalues, eigenvectors, values = cached
            return Spectrum(eigenvalues, eigenvectors), Descriptors(values)

    spectrum = graph_spectrum(g, params.k)
    grid = params.grid()
    if params.full_descriptors:
        descriptors = heat_diagonals(graph_spectrum(g, g.n), grid)
    else:
        descriptors = heat_diagonals(spectrum, grid)

    if cache is not None:
        cache.put_spectrum(g.fingerprint(), key, spectrum.eigenvalues, spectrum.eigenvectors, descriptors.values)
    return spectrum, descriptors


def _rotation(
    inputs: AlignObjectiveInputs,
    params: GraspParams,
    hashes: Optional[Tuple[str, str]],
    cache: Optional[SpectralCacheRepository]
) -> BaseRotation:
    key = params.rotation_key()
    if cache is not None and hashes is not None:
        cached = cache.get_rotation(hashes[0], hashes[1], key)
        if cached is not None:
            return BaseRotation(**cached)

    rotation = optimize_rotation(inputs) if params.base_align else unrotated(inputs)
    if params.base_align and not rotation.converged:
        logger.warning(
            f"Base alignment stopped after {rotation.iterations} iterations without reaching the gradient tolerance"
        )

    if cache is not None and hashes is not None:
        cache.put_rotation(
            hashes[0], hashes[1], key,
            rotation.M, rotation.objective_trace, rotation.converged, rotation.iterations
        )
    return rotation


def prepare_pair(
    g1: Graph,
    g2: Graph,
    params: Optional[GraspParams] = None,
    cache: Optional[SpectralCacheRepository] = None
) -> PreparedPair:
    """
    Шаги 1-3: спектры и соответствующие функции обоих графов, затем поворот базиса G2.

    Args:
        g1: Первый граф
        g2: Второй граф
        params: Параметры (по умолчанию из конфигурации)
        cache: Кэш предвычислений (необязательно)

    Returns:
        PreparedPair: Подготовленная пара
    """
    params = params or GraspParams.from_config()
    if g1.n != g2.n:
        raise ParameterError(f"Graphs must have equal node counts, got {g1.n} and {g2.n}")

    start = time.perf_counter()
    # Графы независимы, их спектры считаются параллельно
    with ThreadPoolExecutor(max_workers=2) as pool:
        first = pool.submit(prepare_graph, g1, params, cache)
        second = pool.submit(prepare_graph, g2, params, cache)
        spectrum1, descriptors1 = first.result()
        spectrum2, descriptors2 = second.result()

    inputs = AlignObjectiveInputs(
        lambda2=spectrum2.eigenvalues,
        P=project(descriptors1, spectrum1.eigenvectors),
        Q=project(descriptors2, spectrum2.eigenvectors),
        mu=params.mu
    )
    hashes = (g1.fingerprint(), g2.fingerprint()) if cache is not None else None
    rotation = _rotation(inputs, params, hashes, cache)

    return PreparedPair(
        spectrum1=spectrum1,
        spectrum2=spectrum2,
        descriptors1=descriptors1,
        descriptors2=descriptors2,
        rotation=rotation,
        params=params,
        precompute_ms=(time.perf_counter() - start) * 1000.0
    )


def finish_alignment(prepared: PreparedPair, matcher: Optional[str] = None) -> Alignment:
    """
    Шаги 4-5: диагональная матрица C и сопоставление вершин.

    Args:
        prepared: Результат prepare_pair
        matcher: Способ сопоставления (по умолчанию из параметров пары)

    Returns:
        Alignment: Выравнивание с provenance
    """
    params = prepared.params if matcher is None else replace(prepared.params, matcher=matcher)
    start = time.perf_counter()

    phi = prepared.phi
    psi_hat = prepared.psi_hat
    cmap: DiagonalMap = solve_diagonal_map(prepared.descriptors1, prepared.descriptors2, phi, psi_hat)
    cost = build_cost(phi, psi_hat, cmap)
    alignment = match(cost, params.matcher)

    aligned_ms = (time.perf_counter() - start) * 1000.0
    rotation = prepared.rotation
    return alignment.stamp(
        params=params.to_dict(),
        k=prepared.spectrum1.k,
        objective_initial=rotation.initial_objective,
        objective_final=rotation.final_objective,
        rotation_iterations=rotation.iterations,
        rotation_converged=rotation.converged,
        map_residual=cmap.residual,
        degenerate_columns=int(np.count_nonzero(cmap.degenerate)),
        precompute_ms=prepared.precompute_ms,
        aligned_ms=aligned_ms,
        runtime_ms=prepared.precompute_ms + aligned_ms
    )


def grasp_align(
    g1: Graph,
    g2: Graph,
    params: Optional[GraspParams] = None,
    cache: Optional[SpectralCacheRepository] = None,
    seed: Optional[int] = None
) -> Alignment:
    """
    Полный конвейер GRASP (шаги 1-5).

    Args:
        g1: Первый граф
        g2: Второй граф
        params: Параметры (по умолчанию из конфигурации)
        cache: Кэш предвычислений (необязательно)
        seed: Зерно эксперимента, только для provenance

    Returns:
        Alignment: Выравнивание вершин g1 на вершины g2
    """
    params = params or GraspParams.from_config()
    prepared = prepare_pair(g1, g2, params, cache)
    alignment = finish_alignment(prepared)
    if seed is not None:
        alignment.provenance["seed"] = seed
    logger.info(
        f"Aligned n={g1.n} with k={prepared.spectrum1.k}, matcher={params.matcher}, "
        f"base_align={params.base_align}: total cost {alignment.total_cost:.6g}"
    )
    return alignment
