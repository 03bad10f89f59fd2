"""Topology and model-file module"""
from .edgelist import load_edge_list, parse_edge_list, render_edge_list, save_edge_list
from .generators import (
    TOPOLOGIES,
    build_topology,
    complete_graph,
    couplings_constant,
    couplings_from_spec,
    couplings_uniform,
    lattice_2d,
    periodic_chain,
)
