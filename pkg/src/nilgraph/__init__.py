"""Non-nilpotent graphs of finite groups.

Build the graph joining ``x`` and ``y`` when ``<x, y>`` is not nilpotent,
count nilpotent partners of permutations, certify trivial hypercenters,
study cycle statistics of random permutations, and realize any finite
simple graph as an induced subgraph of such a graph.
"""
from .graph import (
    Graph,
    build_nilgraph,
    diameter,
    induced_subgraph,
    is_complete_multipartite,
    nonnilpotent_graph,
    verify_quotient_blowup,
)
from .group import FiniteGroup, hypercenter, is_nilpotent, make_group, pair_nilpotent
from .perm import CycleType, Permutation, parse_cycles

__version__ = "0.1.0"

__all__ = [
    "CycleType",
    "FiniteGroup",
    "Graph",
    "Permutation",
    "build_nilgraph",
    "diameter",
    "hypercenter",
    "induced_subgraph",
    "is_complete_multipartite",
    "is_nilpotent",
    "make_group",
    "nonnilpotent_graph",
    "pair_nilpotent",
    "parse_cycles",
    "verify_quotient_blowup",
]
