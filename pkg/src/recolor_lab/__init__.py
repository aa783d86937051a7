"""Exact tools for coloring reconfiguration graphs and modular decomposition."""

from .coloring import Coloring, chromatic_number, enumerate_colorings, is_proper
from .graph import Graph, blowup, complement, parse_graph, sibling
from .lifting import plan_recoloring
from .modules import clique_skeleton, is_prime, maximal_module_partition, skeleton
from .reconfig import RecoloringSchedule, census, find_path, is_k_mixing

__all__ = [
    "Coloring",
    "Graph",
    "RecoloringSchedule",
    "blowup",
    "census",
    "chromatic_number",
    "clique_skeleton",
    "complement",
    "enumerate_colorings",
    "find_path",
    "is_k_mixing",
    "is_prime",
    "is_proper",
    "maximal_module_partition",
    "parse_graph",
    "plan_recoloring",
    "sibling",
    "skeleton",
]
