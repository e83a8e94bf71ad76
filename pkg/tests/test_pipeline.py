import time

import numpy as np
import pytest

from conftest import connected_gnp
from src.core.assignment import accuracy
from src.core.functional_map import solve_diagonal_map
from src.core.graph import Graph, delete_edges, permute, random_permutation
from src.core.pipeline import GraspParams, finish_alignment, grasp_align, prepare_pair
from src.database.repository import SpectralCacheRepository
from src.errors import ParameterError


def test_default_params():
    params = GraspParams()
    assert (params.k, params.q, params.t_min, params.t_max, params.mu) == (20, 100, 0.1, 50.0, 0.132)
    assert params.matcher == "jv" and params.base_align
    assert params.grid().q == 100


@pytest.mark.parametrize("overrides", [
    {"k": 0},
    {"q": 0},
    {"t_min": 0.0},
    {"t_min": 5.0, "t_max": 1.0},
    {"mu": -0.1},
    {"matcher": "hungarian"},
    {"time_scale": "cubic"},
])
def test_invalid_params(overrides):
    with pytest.raises(ParameterError):
        GraspParams(**overrides)


def test_from_config_ignores_missing_overrides():
    params = GraspParams.from_config(k=7, matcher=None)
    assert params.k == 7
    assert params.matcher in ("jv", "nn", "greedy")


def test_size_mismatch(path3, k2):
    with pytest.raises(ParameterError):
        grasp_align(path3, k2)


def test_self_alignment_is_identity(asymmetric10):
    alignment = grasp_align(asymmetric10, asymmetric10, GraspParams(k=10))
    assert alignment.mapping.tolist() == list(range(10))
    assert accuracy(alignment, np.arange(10)) == 1.0


def test_recovers_permuted_copy():
    start = time.perf_counter()
    scores = []
    for seed in range(5):
        g = connected_gnp(100, 0.1, seed=seed)
        truth = random_permutation(g.n, seed=50 + seed)
        alignment = grasp_align(g, permute(g, truth), GraspParams(), seed=seed)
        assert alignment.is_bijection()
        scores.append(accuracy(alignment, truth))
    assert np.mean(scores) >= 0.95
    assert time.perf_counter() - start < 10.0


def test_isomorphic_map_is_unit(random_graph):
    prepared = prepare_pair(random_graph, permute(random_graph, random_permutation(random_graph.n, seed=2)))
    cmap = solve_diagonal_map(prepared.descriptors1, prepared.descriptors2, prepared.phi, prepared.psi_hat)
    assert np.all(np.abs(np.abs(cmap.c) - 1.0) <= 1e-6)


def test_alignment_is_permutation_equivariant(random_graph):
    noisy = delete_edges(random_graph, 0.05, seed=8)
    sigma = random_permutation(random_graph.n, seed=9)
    params = GraspParams(k=15)

    base = grasp_align(random_graph, noisy, params)
    moved = grasp_align(random_graph, permute(noisy, sigma), params)
    agreement = np.mean(moved.mapping == sigma.mapping[base.mapping])
    assert agreement >= 0.9


def test_variants_share_preparation(random_graph):
    target = permute(random_graph, random_permutation(random_graph.n, seed=5))
    prepared = prepare_pair(random_graph, target, GraspParams(k=15))
    for matcher in ("jv", "nn", "greedy"):
        alignment = finish_alignment(prepared, matcher)
        assert alignment.method == matcher
        assert alignment.provenance["params"]["matcher"] == matcher
        assert alignment.provenance["runtime_ms"] >= alignment.provenance["aligned_ms"] >= 0.0


def test_provenance(random_graph):
    alignment = grasp_align(random_graph, random_graph, GraspParams(k=12, base_align=False), seed=4)
    info = alignment.provenance
    assert info["seed"] == 4
    assert info["k"] == 12
    assert info["rotation_iterations"] == 0
    assert info["params"]["base_align"] is False
    assert "created_at" in info


def test_small_graph_clamps_k(path3):
    alignment = grasp_align(path3, path3, GraspParams(k=20))
    assert alignment.provenance["k"] == 3
    assert alignment.is_bijection()


def test_log_grid_and_full_descriptors(asymmetric10):
    params = GraspParams(k=6, q=30, time_scale="log", full_descriptors=True)
    alignment = grasp_align(asymmetric10, asymmetric10, params)
    assert alignment.mapping.tolist() == list(range(10))


def test_cache_reuses_precomputation(tmp_path, random_graph):
    cache = SpectralCacheRepository(str(tmp_path / "spectra.db"))
    target = permute(random_graph, random_permutation(random_graph.n, seed=6))
    params = GraspParams(k=10, q=40)

    first = grasp_align(random_graph, target, params, cache=cache)
    assert cache.count_entries() == {"spectra": 2, "rotations": 1}

    second = grasp_align(random_graph, target, params, cache=cache)
    assert cache.count_entries() == {"spectra": 2, "rotations": 1}
    assert np.array_equal(first.mapping, second.mapping)
    assert second.provenance["objective_final"] == pytest.approx(first.provenance["objective_final"])

    assert cache.clear() == 3
    assert cache.count_entries() == {"spectra": 0, "rotations": 0}


def test_disconnected_graph_still_aligns():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    alignment = grasp_align(g, g, GraspParams(k=4))
    assert alignment.is_bijection()
