"""Graph module"""
from .core import Edge, EdgeSet, Graph, UnionFind, build_graph, component_count, cut_edges, is_even_subgraph
from .trees import (
    TreePartition,
    decompose_in_cycle_basis,
    fundamental_cutset,
    fundamental_cycle,
    maximum_spanning_tree,
    random_spanning_tree,
)
