import numpy as np
import pytest

from conftest import connected_gnp
from src.core.descriptors import (
    Descriptors,
    TimeGrid,
    delta_coefficients,
    heat_diagonals,
    project
)
from src.core.graph import permute, random_permutation
from src.core.spectral import Spectrum, graph_spectrum
from src.errors import DescriptorError


def test_linear_grid():
    grid = TimeGrid.linear(0.1, 50.0, 100)
    assert grid.q == 100
    assert grid.t[0] == pytest.approx(0.1)
    assert grid.t[-1] == pytest.approx(50.0)
    assert np.allclose(np.diff(grid.t), np.diff(grid.t)[0])


def test_log_grid():
    grid = TimeGrid.build(0.1, 10.0, 3, scale="log")
    assert np.allclose(grid.t, [0.1, 1.0, 10.0])


@pytest.mark.parametrize("t", [[], [0.0, 1.0], [2.0, 1.0], [1.0, 1.0]])
def test_invalid_grids(t):
    with pytest.raises(DescriptorError):
        TimeGrid(np.array(t, dtype=float))


def test_invalid_grid_bounds():
    with pytest.raises(DescriptorError):
        TimeGrid.linear(5.0, 1.0, 10)
    with pytest.raises(DescriptorError):
        TimeGrid.linear(0.1, 1.0, 0)
    with pytest.raises(DescriptorError):
        TimeGrid.build(0.1, 1.0, 10, scale="cubic")


def test_k3_closed_form(k3):
    desc = heat_diagonals(graph_spectrum(k3, k=3), TimeGrid(np.array([1.0])))
    expected = (1.0 + 2.0 * np.exp(-1.5)) / 3.0
    np.testing.assert_allclose(desc.values[:, 0], expected, atol=1e-12)


def test_tiny_time_sums_to_n(random_graph):
    spectrum = graph_spectrum(random_graph, k=random_graph.n)
    desc = heat_diagonals(spectrum, TimeGrid(np.array([1e-12])))
    assert desc.heat_trace()[0] == pytest.approx(random_graph.n, abs=1e-8)


def test_heat_trace_identity():
    grid = TimeGrid.linear(0.1, 50.0, 100)
    for seed in range(20):
        g = connected_gnp(50, 0.1, seed=seed)
        spectrum = graph_spectrum(g, k=g.n)
        desc = heat_diagonals(spectrum, grid)
        expected = np.exp(-np.outer(spectrum.eigenvalues, grid.t)).sum(axis=0)
        assert np.max(np.abs(desc.heat_trace() - expected)) <= 1e-8


def test_entries_bounded_and_decreasing(random_graph):
    desc = heat_diagonals(graph_spectrum(random_graph, k=20), TimeGrid.linear(0.1, 50.0, 100))
    assert desc.values.shape == (random_graph.n, 100)
    assert np.all(desc.values >= -1e-12)
    assert np.all(desc.values <= 1.0 + 1e-8)
    assert np.all(np.diff(desc.values, axis=1) <= 1e-12)


def test_columns_are_permutation_invariant():
    grid = TimeGrid.linear(0.1, 50.0, 20)
    for seed in range(10):
        g = connected_gnp(30, 0.2, seed=100 + seed)
        moved = permute(g, random_permutation(g.n, seed=seed))
        a = heat_diagonals(graph_spectrum(g, k=g.n), grid).values
        b = heat_diagonals(graph_spectrum(moved, k=moved.n), grid).values
        np.testing.assert_allclose(np.sort(a, axis=0), np.sort(b, axis=0), atol=1e-8)


def test_delta_coefficients_identity_basis():
    spectrum = Spectrum(np.zeros(3), np.eye(3))
    coefficients = delta_coefficients(spectrum)
    assert np.array_equal(coefficients, np.eye(3))
    coefficients[0, 0] = 5.0
    assert spectrum.eigenvectors[0, 0] == 1.0


def test_project_shapes(random_graph):
    spectrum = graph_spectrum(random_graph, k=10)
    desc = heat_diagonals(spectrum, TimeGrid.linear(0.1, 50.0, 25))
    assert project(desc, spectrum.eigenvectors).shape == (25, 10)

    with pytest.raises(DescriptorError):
        project(Descriptors(np.ones((3, 2))), spectrum.eigenvectors)


def test_delta_coefficients_single_vector(random_graph):
    spectrum = graph_spectrum(random_graph, k=1)
    coefficients = delta_coefficients(spectrum)
    assert coefficients.shape == (random_graph.n, 1)
    np.testing.assert_array_equal(coefficients[:, 0], spectrum.eigenvectors[:, 0])


def test_delta_reconstruction_residual(random_graph):
    spectrum = graph_spectrum(random_graph, k=10)
    coefficients = delta_coefficients(spectrum)
    basis = spectrum.eigenvectors

    for u in range(random_graph.n):
        delta = np.zeros(random_graph.n)
        delta[u] = 1.0
        error = np.sum((basis @ coefficients[u] - delta) ** 2)
        assert error == pytest.approx(1.0 - np.sum(coefficients[u] ** 2), abs=1e-10)
