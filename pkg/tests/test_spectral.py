import networkx as nx
import numpy as np
import pytest

from conftest import connected_gnp
from src.core.graph import Graph, permute, random_permutation
from src.core.spectral import (
    canonicalize_signs,
    eigendecompose,
    graph_spectrum,
    normalized_laplacian
)
from src.errors import SpectralError


def test_laplacian_of_k2(k2):
    L = normalized_laplacian(k2).toarray()
    assert np.allclose(L, [[1.0, -1.0], [-1.0, 1.0]])


def test_laplacian_isolated_node_row_is_zero():
    g = Graph.from_edges(3, [(0, 1)])
    L = normalized_laplacian(g).toarray()
    assert np.allclose(L[2], 0.0)
    assert np.allclose(np.diag(L), [1.0, 1.0, 0.0])


def test_laplacian_matches_networkx(random_graph):
    ours = normalized_laplacian(random_graph).toarray()
    theirs = nx.normalized_laplacian_matrix(random_graph.to_networkx(), nodelist=range(random_graph.n)).toarray()
    assert np.allclose(ours, theirs, atol=1e-12)


@pytest.mark.parametrize("fixture, expected", [
    ("k2", [0.0, 2.0]),
    ("path3", [0.0, 1.0, 2.0]),
    ("k3", [0.0, 1.5, 1.5]),
])
def test_small_spectra(request, fixture, expected):
    spectrum = graph_spectrum(request.getfixturevalue(fixture), k=10)
    assert spectrum.k == len(expected)
    assert np.allclose(spectrum.eigenvalues, expected, atol=1e-10)


def test_single_isolated_node():
    spectrum = graph_spectrum(Graph.from_edges(1, []), k=1)
    assert np.allclose(spectrum.eigenvalues, [0.0])
    assert np.allclose(np.abs(spectrum.eigenvectors), [[1.0]])


def test_eigenpairs_are_valid(random_graph):
    L = normalized_laplacian(random_graph).toarray()
    spectrum = graph_spectrum(random_graph, k=12)

    V = spectrum.eigenvectors
    assert np.all(np.diff(spectrum.eigenvalues) >= -1e-12)
    assert np.allclose(V.T @ V, np.eye(12), atol=1e-10)
    assert np.allclose(L @ V, V * spectrum.eigenvalues, atol=1e-8)


def test_signs_are_canonical(random_graph):
    V = graph_spectrum(random_graph, k=8).eigenvectors
    pivots = np.argmax(np.abs(V), axis=0)
    assert np.all(V[pivots, np.arange(8)] > 0)


def test_canonicalize_signs_tie_goes_to_lowest_index():
    vectors = np.array([[-0.5], [0.5], [0.1]])
    assert canonicalize_signs(vectors)[:, 0].tolist() == [0.5, -0.5, -0.1]


def test_zero_multiplicity_counts_components():
    nx_graph = nx.disjoint_union(nx.path_graph(4), nx.cycle_graph(5))
    g = Graph.from_networkx(nx_graph)
    spectrum = graph_spectrum(g, k=5)
    assert spectrum.zero_multiplicity() == nx.number_connected_components(nx_graph)


def test_eigenvalues_are_permutation_invariant(random_graph):
    moved = permute(random_graph, random_permutation(random_graph.n, seed=4))
    a = graph_spectrum(random_graph, k=15).eigenvalues
    b = graph_spectrum(moved, k=15).eigenvalues
    assert np.allclose(a, b, atol=1e-10)


def test_iterative_solver_agrees_with_dense():
    g = connected_gnp(60, 0.1, seed=21)
    L = normalized_laplacian(g)
    dense = eigendecompose(L, k=6, dense_limit=10_000)
    lanczos = eigendecompose(L, k=6, dense_limit=10)

    assert np.allclose(dense.eigenvalues, lanczos.eigenvalues, atol=1e-7)
    overlap = np.abs(np.diag(dense.eigenvectors.T @ lanczos.eigenvectors))
    assert np.all(overlap > 1 - 1e-6)


def test_k_is_clamped(path3):
    assert graph_spectrum(path3, k=50).k == 3


def test_errors():
    with pytest.raises(SpectralError):
        eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]), k=1)
    with pytest.raises(SpectralError):
        eigendecompose(np.eye(3), k=0)
    with pytest.raises(SpectralError):
        eigendecompose(np.ones((2, 3)), k=1)


def test_eigenvalues_within_normalized_bounds(k2, path3):
    graphs = [k2, path3, Graph.from_edges(5, [(0, 1), (2, 3)])]
    graphs += [connected_gnp(30, 0.2, seed=seed) for seed in range(5)]
    for g in graphs:
        values = graph_spectrum(g, k=g.n).eigenvalues
        assert values.min() >= -1e-8
        assert values.max() <= 2.0 + 1e-8
