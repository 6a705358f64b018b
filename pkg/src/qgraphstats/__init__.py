"""Abelian two-particle quantum statistics on combinatorial graphs."""

__version__ = "0.1.0"

from .graph import Graph, build_graph, read_edge_list, spanning_tree  # noqa: E402
from .pairs import TwoParticleGraph, build_two_particle  # noqa: E402
from .statistics import (  # noqa: E402
    PhaseAssignment,
    classify,
    classify_graph,
    constraint_matrix,
    synthesize_gauge,
    synthesize_with_ab,
)

__all__ = [
    "__version__",
    "Graph",
    "build_graph",
    "read_edge_list",
    "spanning_tree",
    "TwoParticleGraph",
    "build_two_particle",
    "PhaseAssignment",
    "classify",
    "classify_graph",
    "constraint_matrix",
    "synthesize_gauge",
    "synthesize_with_ab",
]
