"""
Модуль графов: представление неориентированного простого графа,
чтение списка рёбер, перестановки вершин и зашумление удалением рёбер.
"""

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import scipy.sparse as sps

from src.errors import GraphError
from src.logger import logger

# Строки, начинающиеся с этих символов, считаются комментариями
COMMENT_PREFIXES = ("#", "%")


def _normalize_edges(n: int, pairs: Iterable[Tuple[int, int]]) -> np.ndarray:
    """
    Приводит пары вершин к каноническому виду: u < v, без петель и дублей,
    строки отсортированы лексикографически.

    Args:
        n: Количество вершин
        pairs: Пары индексов вершин

    Returns:
        np.ndarray: Массив рёбер формы (m, 2)
    """
    if not isinstance(pairs, np.ndarray):
        pairs = list(pairs)
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise GraphError(f"Edge endpoint outside 0..{n - 1}")

    arr = arr[arr[:, 0] != arr[:, 1]]
    arr = np.sort(arr, axis=1)
    if arr.shape[0] == 0:
        return np.empty((0, 2), dtype=np.int64)
    return np.unique(arr, axis=0)


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Неориентированный простой граф над вершинами 0..n-1.

    Каждое ребро хранится один раз как (u, v) с u < v.
    labels - исходные метки вершин из файла (None для анонимного графа).
    """

    n: int
    edges: np.ndarray
    degrees: np.ndarray
    labels: Optional[Tuple[str, ...]] = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        pairs: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None
    ) -> "Graph":
        """
        Создает граф из пар вершин, отбрасывая петли и повторные рёбра.

        Args:
            n: Количество вершин
            pairs: Пары индексов вершин
            labels: Исходные метки вершин (длины n)

        Returns:
            Graph: Новый граф
        """
        if n < 0:
            raise GraphError("Node count cannot be negative")
        if labels is not None and len(labels) != n:
            raise GraphError(f"Got {len(labels)} labels for {n} nodes")

        edges = _normalize_edges(n, pairs)
        degrees = np.bincount(edges.ravel(), minlength=n).astype(np.int64)
        edges.setflags(write=False)
        degrees.setflags(write=False)
        return cls(
            n=n,
            edges=edges,
            degrees=degrees,
            labels=tuple(str(label) for label in labels) if labels is not None else None
        )

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Переиндексирует вершины графа networkx в порядке обхода и строит Graph."""
        nodes = list(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        pairs = [(index[u], index[v]) for u, v in nx_graph.edges()]
        return cls.from_edges(len(nodes), pairs, labels=[str(node) for node in nodes])

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def label(self, node: int) -> str:
        """Возвращает исходную метку вершины (или её индекс)."""
        if self.labels is None:
            return str(node)
        return self.labels[node]

    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((int(u), int(v)) for u, v in self.edges)

    def adjacency(self) -> sps.csr_matrix:
        """
        Возвращает симметричную разреженную матрицу смежности.

        Returns:
            sps.csr_matrix: Матрица n×n из нулей и единиц
        """
        rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        data = np.ones(rows.shape[0], dtype=np.float64)
        return sps.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from((int(u), int(v)) for u, v in self.edges)
        return nx_graph

    def fingerprint(self) -> str:
        """
        Хэш структуры графа (n и отсортированные рёбра), ключ для кэша.

        Returns:
            str: sha256 в hex
        """
        digest = hashlib.sha256()
        digest.update(str(self.n).encode("utf-8"))
        digest.update(np.ascontiguousarray(self.edges, dtype=np.int64).tobytes())
        return digest.hexdigest()

    def summary(self) -> Dict[str, int]:
        return {
            "n": self.n,
            "edges": self.num_edges,
            "isolated": int(np.count_nonzero(self.degrees == 0)),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self) -> int:
        return hash(self.fingerprint())


def load_edge_list(path: Union[str, Path]) -> Graph:
    """
    Читает список рёбер: по одному ребру в строке, две метки через пробел.
    Метки переиндексируются плотно в порядке первого появления.

    Args:
        path: Путь к файлу

    Returns:
        Graph: Граф с сохранёнными исходными метками
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise GraphError(f"Cannot read edge list {path}: {e}") from e

    index: Dict[str, int] = {}
    pairs: List[Tuple[int, int]] = []

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue

        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"{path}:{line_no}: expected 2 tokens, got {len(tokens)}")

        u = index.setdefault(tokens[0], len(index))
        v = index.setdefault(tokens[1], len(index))
        pairs.append((u, v))

    if not index:
        raise GraphError(f"Edge list {path} contains no nodes")

    graph = Graph.from_edges(len(index), pairs, labels=list(index.keys()))
    stats = graph.summary()
    logger.info(
        f"Loaded graph {path}: n={stats['n']}, edges={stats['edges']}, isolated={stats['isolated']}"
    )
    return graph


@dataclass(frozen=True)
class NodePermutation:
    """Биекция вершин 0..n-1: вершина i переходит в mapping[i]."""

    mapping: np.ndarray

    def __post_init__(self) -> None:
        mapping = np.asarray(self.mapping, dtype=np.int64)
        n = mapping.shape[0]
        if mapping.ndim != 1 or not np.array_equal(np.sort(mapping), np.arange(n)):
            raise GraphError("Mapping is not a permutation of 0..n-1")
        mapping.setflags(write=False)
        object.__setattr__(self, "mapping", mapping)

    def __len__(self) -> int:
        return int(self.mapping.shape[0])

    def __getitem__(self, node: int) -> int:
        return int(self.mapping[node])


def inverse(perm: NodePermutation) -> NodePermutation:
    """Возвращает обратную перестановку."""
    inv = np.empty_like(perm.mapping)
    inv[perm.mapping] = np.arange(len(perm))
    return NodePermutation(inv)


def permute(g: Graph, perm: NodePermutation) -> Graph:
    """
    Переименовывает вершины: ребро (u, v) становится (perm[u], perm[v]).
    Результат анонимный: перестановка скрывает идентичность вершин.

    Args:
        g: Исходный граф
        perm: Перестановка длины g.n

    Returns:
        Graph: Переставленный граф
    """
    if len(perm) != g.n:
        raise GraphError(f"Permutation length {len(perm)} does not match n={g.n}")
    return Graph.from_edges(g.n, perm.mapping[g.edges])


def delete_edges(g: Graph, p: float, seed: int) -> Graph:
    """
    Удаляет каждое ребро независимо с вероятностью p.
    Количество вершин не меняется, изолированные вершины остаются.

    Args:
        g: Исходный граф
        p: Вероятность удаления ребра
        seed: Зерно генератора

    Returns:
        Graph: Зашумлённый граф
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"Deletion probability {p} outside [0, 1]")

    rng = np.random.default_rng(seed)
    keep = rng.random(g.num_edges) >= p
    return Graph.from_edges(g.n, g.edges[keep], labels=g.labels)


def random_permutation(n: int, seed: int) -> NodePermutation:
    """
    Равномерно случайная перестановка, детерминированная по seed.

    Args:
        n: Количество вершин
        seed: Зерно генератора

    Returns:
        NodePermutation: Перестановка
    """
    if n < 1:
        raise GraphError("Permutation size must be at least 1")
    rng = np.random.default_rng(seed)
    return NodePermutation(rng.permutation(n))
