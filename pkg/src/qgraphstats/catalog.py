"""Standard example graphs and the bundled edge-list corpus."""
from __future__ import annotations

import json
from importlib import resources
from itertools import combinations

from .graph import Graph, build_graph, parse_edge_list


def linear(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(1, n)])


def circular(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(1, n)] + [(1, n)])


def star(e: int) -> Graph:
    """Centre 1 joined to leaves 2..e+1."""
    return build_graph([(1, i) for i in range(2, e + 2)])


def complete(n: int) -> Graph:
    return build_graph(combinations(range(1, n + 1), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    return build_graph([(a, b) for a in range(1, m + 1) for b in range(m + 1, m + n + 1)])


def lasso() -> Graph:
    """Triangle 1-2-3 with the lead 3-4."""
    return build_graph([(1, 2), (2, 3), (1, 3), (3, 4)])


def bowtie() -> Graph:
    """Triangles 1-2-3 and 3-4-5 sharing vertex 3."""
    return build_graph([(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)])


def k5_molecule() -> Graph:
    """Two copies of K5 (vertices 1..5 and 6..10) joined by the edge 5-6."""
    edges = list(combinations(range(1, 6), 2)) + list(combinations(range(6, 11), 2))
    return build_graph(edges + [(5, 6)])


def corpus_manifest() -> dict:
    text = resources.files(__package__).joinpath("corpus/manifest.json").read_text()
    return json.loads(text)


def corpus_graph(name: str) -> Graph:
    entry = corpus_manifest()[name]
    text = resources.files(__package__).joinpath("corpus", entry["file"]).read_text()
    return build_graph(parse_edge_list(text, source=entry["file"]))


def corpus_graphs() -> dict[str, Graph]:
    return {name: corpus_graph(name) for name in corpus_manifest()}
