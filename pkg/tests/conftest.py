"""
Общие фикстуры тестов.
"""

import os

# Тесты не пишут лог-файлы и не используют кэш на диске
os.environ["LOG_FILE"] = ""
os.environ["ENABLE_CACHE"] = "false"
os.environ.setdefault("LOG_LEVEL", "WARNING")

import networkx as nx
import numpy as np
import pytest

from src.core.graph import Graph


def connected_gnp(n: int, p: float, seed: int) -> Graph:
    """Первый связный G(n, p), начиная с данного зерна."""
    while True:
        nx_graph = nx.gnp_random_graph(n, p, seed=seed)
        if nx.is_connected(nx_graph):
            return Graph.from_edges(n, list(nx_graph.edges()))
        seed += 1000


def asymmetric_graph(n: int, seed: int) -> Graph:
    """
    Связный граф без нетривиальных автоморфизмов и с попарно различными
    собственными значениями лапласиана: случайное дерево плюс хорды.
    """
    rng = np.random.default_rng(seed)
    make_tree = getattr(nx, "random_labeled_tree", None) or nx.random_tree
    while True:
        nx_graph = nx.Graph(make_tree(n, seed=int(rng.integers(2 ** 31))))
        for _ in range(n // 2):
            u, v = rng.choice(n, size=2, replace=False)
            nx_graph.add_edge(int(u), int(v))
        g = Graph.from_edges(n, list(nx_graph.edges()))

        L = nx.normalized_laplacian_matrix(nx_graph, nodelist=range(n)).toarray()
        values = np.linalg.eigvalsh(L)
        if np.min(np.diff(values)) < 1e-6:
            continue
        matcher = nx.algorithms.isomorphism.GraphMatcher(nx_graph, nx_graph)
        automorphisms = 0
        for _ in matcher.isomorphisms_iter():
            automorphisms += 1
            if automorphisms > 1:
                break
        if automorphisms == 1:
            return g


@pytest.fixture
def path3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def k2() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def k3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def random_graph() -> Graph:
    return connected_gnp(40, 0.15, seed=7)


@pytest.fixture
def asymmetric10() -> Graph:
    return asymmetric_graph(10, seed=3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def write_edge_list(path, g: Graph, labels=None, order=None) -> None:
    """Пишет граф в формате списка рёбер (метки по умолчанию - индексы)."""
    labels = labels or [str(i) for i in range(g.n)]
    edges = [tuple(edge) for edge in g.edges]
    if order is not None:
        edges = [edges[i] for i in order]
    with open(path, "w", encoding="utf-8") as f:
        f.write("# test graph\n")
        for u, v in edges:
            f.write(f"{labels[u]} {labels[v]}\n")
