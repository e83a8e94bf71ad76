import networkx as nx
import numpy as np
import pytest

from src.core.graph import (
    Graph,
    NodePermutation,
    delete_edges,
    inverse,
    load_edge_list,
    permute,
    random_permutation
)
from src.errors import GraphError


def test_from_edges_drops_loops_and_duplicates():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (2, 2), (2, 1)])
    assert g.edges.tolist() == [[0, 1], [1, 2]]
    assert g.degrees.tolist() == [1, 2, 1]
    assert g.num_edges == 2


def test_from_edges_rejects_unknown_node():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_edges_are_read_only(k3):
    with pytest.raises(ValueError):
        k3.edges[0, 0] = 2


def test_load_edge_list(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# comment\n% another\n\na b\nb c\nb a\nd d\n", encoding="utf-8")
    g = load_edge_list(path)
    assert g.n == 4
    assert g.labels == ("a", "b", "c", "d")
    assert g.edge_set() == frozenset({(0, 1), (1, 2)})
    assert g.summary() == {"n": 4, "edges": 2, "isolated": 1}


def test_load_edge_list_bad_line(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("a b\na b c\n", encoding="utf-8")
    with pytest.raises(GraphError, match=":2:"):
        load_edge_list(path)


def test_load_edge_list_errors(tmp_path):
    with pytest.raises(GraphError):
        load_edge_list(tmp_path / "missing.txt")

    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n", encoding="utf-8")
    with pytest.raises(GraphError):
        load_edge_list(empty)


def test_permute_renames_edges(path3):
    perm = NodePermutation(np.array([2, 0, 1]))
    moved = permute(path3, perm)
    assert moved.edge_set() == frozenset({(0, 2), (0, 1)})
    assert moved.labels is None
    assert moved.degrees.tolist() == [2, 1, 1]


def test_permute_then_inverse_is_identity(random_graph):
    perm = random_permutation(random_graph.n, seed=1)
    assert permute(permute(random_graph, perm), inverse(perm)) == random_graph


def test_permute_length_mismatch(path3):
    with pytest.raises(GraphError):
        permute(path3, NodePermutation(np.array([1, 0])))


def test_node_permutation_validates():
    with pytest.raises(GraphError):
        NodePermutation(np.array([0, 0, 1]))


def test_delete_edges_extremes(random_graph):
    assert delete_edges(random_graph, 0.0, seed=3) == random_graph

    emptied = delete_edges(random_graph, 1.0, seed=3)
    assert emptied.n == random_graph.n
    assert emptied.num_edges == 0


def test_delete_edges_is_deterministic_subset(random_graph):
    a = delete_edges(random_graph, 0.3, seed=11)
    b = delete_edges(random_graph, 0.3, seed=11)
    assert a == b
    assert a.edge_set() <= random_graph.edge_set()
    assert 0 < a.num_edges < random_graph.num_edges


def test_delete_edges_keeps_labels():
    g = Graph.from_edges(2, [(0, 1)], labels=["x", "y"])
    assert delete_edges(g, 0.5, seed=0).labels == ("x", "y")


def test_delete_edges_rejects_probability():
    with pytest.raises(GraphError):
        delete_edges(Graph.from_edges(2, [(0, 1)]), 1.5, seed=0)


def test_random_permutation():
    a = random_permutation(50, seed=9)
    assert np.array_equal(a.mapping, random_permutation(50, seed=9).mapping)
    assert sorted(a.mapping.tolist()) == list(range(50))
    with pytest.raises(GraphError):
        random_permutation(0, seed=9)


def test_fingerprint_tracks_structure(path3, k3):
    same = Graph.from_edges(3, [(1, 2), (0, 1)])
    assert path3.fingerprint() == same.fingerprint()
    assert path3.fingerprint() != k3.fingerprint()
    assert hash(path3) == hash(same)


def test_networkx_conversion(random_graph):
    nx_graph = random_graph.to_networkx()
    assert nx_graph.number_of_nodes() == random_graph.n
    assert nx_graph.number_of_edges() == random_graph.num_edges

    back = Graph.from_networkx(nx.relabel_nodes(nx_graph, {i: f"v{i}" for i in range(random_graph.n)}))
    assert back.num_edges == random_graph.num_edges
    assert back.label(0) == "v0"


def test_delete_edges_keeps_expected_fraction(random_graph):
    fractions = [delete_edges(random_graph, 0.05, seed=seed).num_edges / random_graph.num_edges
                 for seed in range(1000)]
    assert abs(np.mean(fractions) - 0.95) <= 0.01


def test_random_permutation_is_uniform():
    counts = {}
    for seed in range(6000):
        key = tuple(random_permutation(3, seed=seed).mapping.tolist())
        counts[key] = counts.get(key, 0) + 1

    assert len(counts) == 6
    for count in counts.values():
        assert abs(count / 6000 - 1 / 6) <= 0.02


def test_degree_sum_is_twice_edge_count(tmp_path, random_graph):
    path = tmp_path / "g.txt"
    path.write_text("a b\nb c\nc a\nc d\nd d\n", encoding="utf-8")

    graphs = [
        random_graph,
        load_edge_list(path),
        permute(random_graph, random_permutation(random_graph.n, seed=1)),
        delete_edges(random_graph, 0.3, seed=2),
        delete_edges(random_graph, 1.0, seed=2),
        Graph.from_networkx(random_graph.to_networkx()),
    ]
    for g in graphs:
        assert int(g.degrees.sum()) == 2 * g.num_edges
