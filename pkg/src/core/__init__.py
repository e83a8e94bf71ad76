"""
Математическое ядро GRASP.
"""

from src.core.assignment import Alignment, CostMatrix, accuracy, build_cost, solve_greedy, solve_jv, solve_nn
from src.core.graph import Graph, NodePermutation, delete_edges, load_edge_list, permute, random_permutation
from src.core.pipeline import GraspParams, finish_alignment, grasp_align, prepare_pair

__all__ = [
    "Alignment",
    "CostMatrix",
    "Graph",
    "GraspParams",
    "NodePermutation",
    "accuracy",
    "build_cost",
    "delete_edges",
    "finish_alignment",
    "grasp_align",
    "load_edge_list",
    "permute",
    "prepare_pair",
    "random_permutation",
    "solve_greedy",
    "solve_jv",
    "solve_nn",
]
