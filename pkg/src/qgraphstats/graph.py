"""Simple connected combinatorial graphs, paths, spanning trees and cycle bases.

Vertices are labeled ``1..v``.  Edges are stored as ``(lo, hi)`` pairs sorted
lexicographically; traversing an edge from ``lo`` to ``hi`` counts as positive
orientation.  Paths are plain tuples of vertex labels.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path as FilePath
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DisconnectedGraph,
    DuplicateEdge,
    EdgeListParseError,
    EmptyGraph,
    IndexOutOfRange,
    NotACycle,
    PathNotOnGraph,
    SelfLoop,
)

Path = tuple[int, ...]
Edge = tuple[int, int]


class Graph:
    """Simple, undirected, connected graph on vertices ``1..v``.

    Use :func:`build_graph` for arbitrary user input; the constructor expects
    labels already in ``1..v`` and checks the invariants.
    """

    def __init__(self, v: int, edges: Iterable[Sequence[int]], labels: Sequence[int] | None = None):
        if v < 1:
            raise EmptyGraph("graph has no vertices")
        canon = []
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise SelfLoop(f"self-loop at vertex {a}")
            if not (1 <= a <= v and 1 <= b <= v):
                raise ValueError(f"edge ({a}, {b}) has a vertex outside 1..{v}")
            canon.append((min(a, b), max(a, b)))
        canon.sort()
        for x, y in zip(canon, canon[1:]):
            if x == y:
                raise DuplicateEdge(f"duplicate edge {x}")
        self.v = v
        self.edges: tuple[Edge, ...] = tuple(canon)
        self.labels: tuple[int, ...] = tuple(labels) if labels is not None else tuple(range(1, v + 1))
        self._edge_index = {e: i for i, e in enumerate(self.edges)}
        nbrs: list[list[int]] = [[] for _ in range(v + 1)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        self._neighbors = tuple(tuple(sorted(n)) for n in nbrs)
        if len(_reachable(self._neighbors, 1)) != v:
            raise DisconnectedGraph(f"graph with {v} vertices is not connected")

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.v + 1)

    def neighbors(self, j: int) -> tuple[int, ...]:
        return self._neighbors[j]

    def degree(self, j: int) -> int:
        return len(self._neighbors[j])

    def adjacent(self, j: int, k: int) -> bool:
        return (min(j, k), max(j, k)) in self._edge_index

    def edge_index(self, j: int, k: int) -> tuple[int, int]:
        """Return ``(index, sign)`` of the step ``j -> k``; sign +1 if ``j < k``."""
        key = (j, k) if j < k else (k, j)
        try:
            return self._edge_index[key], (1 if j < k else -1)
        except KeyError:
            raise PathNotOnGraph(f"({j}, {k}) is not an edge") from None

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.v, self.v), dtype=np.int64)
        for j, k in self.edges:
            a[j - 1, k - 1] = a[k - 1, j - 1] = 1
        return a

    def is_tree(self) -> bool:
        return self.e == self.v - 1

    def is_circular(self) -> bool:
        """True for the ring graphs C_N (every vertex has degree two)."""
        return self.v >= 3 and all(self.degree(j) == 2 for j in self.vertices)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.v == other.v and self.edges == other.edges

    def __hash__(self):
        return hash((self.v, self.edges))

    def __repr__(self):
        return f"Graph(v={self.v}, e={self.e})"


def _reachable(neighbors, start):
    seen = {start}
    stack = [start]
    while stack:
        j = stack.pop()
        for k in neighbors[j]:
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return seen


def build_graph(edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a canonical :class:`Graph` from arbitrary positive integer labels.

    Labels are relabeled ``1..v`` in increasing order of the original labels.
    Multigraphs and self-loops are rejected; subdivide such edges with extra
    vertices before calling this.
    """
    pairs = []
    for pair in edge_list:
        a, b = (int(x) for x in pair)
        if a < 1 or b < 1:
            raise ValueError(f"vertex labels must be positive integers, got ({a}, {b})")
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a}")
        pairs.append((a, b))
    if not pairs:
        raise EmptyGraph("edge list is empty")
    labels = sorted({x for pr in pairs for x in pr})
    relabel = {lab: i + 1 for i, lab in enumerate(labels)}
    seen = set()
    for a, b in pairs:
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key}")
        seen.add(key)
    return Graph(len(labels), [(relabel[a], relabel[b]) for a, b in pairs], labels=labels)


def parse_edge_list(text: str, source: str = "<string>") -> list[Edge]:
    """Parse the whitespace-separated edge-list format; ``#`` starts a comment line."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"{source}:{lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"{source}:{lineno}: non-integer vertex label in {line!r}") from None
        if a < 1 or b < 1:
            raise EdgeListParseError(f"{source}:{lineno}: vertex labels must be >= 1")
        edges.append((a, b))
    return edges


def read_edge_list(path) -> Graph:
    path = FilePath(path)
    return build_graph(parse_edge_list(path.read_text(), source=str(path)))


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [f"{a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def check_path(g: Graph, p: Sequence[int]) -> Path:
    p = tuple(int(j) for j in p)
    if not p:
        raise PathNotOnGraph("empty path")
    for j in p:
        if not 1 <= j <= g.v:
            raise PathNotOnGraph(f"vertex {j} not in graph")
    for a, b in zip(p, p[1:]):
        if not g.adjacent(a, b):
            raise PathNotOnGraph(f"step {a} -> {b} is not an edge")
    return p


def inverse_path(p: Sequence[int]) -> Path:
    return tuple(reversed(p))


def concatenate(p: Sequence[int], q: Sequence[int]) -> Path:
    if p[-1] != q[0]:
        raise ValueError(f"cannot concatenate: path ends at {p[-1]}, next starts at {q[0]}")
    return tuple(p) + tuple(q[1:])


def reduce_path(p: Sequence[int]) -> Path:
    """Remove back-and-forth steps ``(.., a, b, a, ..)`` until none remain."""
    out: list[int] = []
    for j in p:
        if len(out) >= 2 and out[-2] == j:
            out.pop()
        else:
            out.append(j)
    return tuple(out)


def cyclic_core(c: Sequence[int]) -> Path:
    """Cyclically reduce a closed path: strip the tail ``p`` from ``p c' p^-1``."""
    c = list(reduce_path(c))
    while len(c) >= 3 and c[1] == c[-2]:
        c = c[1:-1]
    return tuple(c)


@dataclass(frozen=True)
class SpanningTree:
    """BFS spanning tree with the non-tree edges indexed ``1..f``."""

    graph: Graph
    root: int
    parent: tuple[int, ...]  # parent[j]; 0 for the root and the unused slot 0
    depth: tuple[int, ...]
    non_tree_edges: tuple[Edge, ...]
    _non_tree_index: dict = field(repr=False, compare=False)

    @property
    def f(self) -> int:
        return len(self.non_tree_edges)

    @property
    def tree_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((min(j, p), max(j, p)) for j, p in enumerate(self.parent) if p))

    def non_tree_index(self, j: int, k: int) -> tuple[int, int] | None:
        """``(phi, sign)`` with 1-based ``phi`` if ``j-k`` is a non-tree edge."""
        key = (j, k) if j < k else (k, j)
        phi = self._non_tree_index.get(key)
        if phi is None:
            return None
        return phi, (1 if j < k else -1)

    def path_to_root(self, j: int) -> Path:
        out = [j]
        while out[-1] != self.root:
            out.append(self.parent[out[-1]])
        return tuple(out)

    def tree_path(self, a: int, b: int) -> Path:
        """The unique tree path from ``a`` to ``b`` with no retracings."""
        return reduce_path(self.path_to_root(a) + inverse_path(self.path_to_root(b))[1:])


def spanning_tree(g: Graph, root: int = 1) -> SpanningTree:
    if not 1 <= root <= g.v:
        raise IndexOutOfRange(f"root {root} not in 1..{g.v}")
    parent = [0] * (g.v + 1)
    depth = [0] * (g.v + 1)
    seen = {root}
    queue = deque([root])
    while queue:
        j = queue.popleft()
        for k in g.neighbors(j):
            if k not in seen:
                seen.add(k)
                parent[k] = j
                depth[k] = depth[j] + 1
                queue.append(k)
    tree = {(min(j, p), max(j, p)) for j, p in enumerate(parent) if p}
    non_tree = tuple(e for e in g.edges if e not in tree)
    return SpanningTree(
        graph=g,
        root=root,
        parent=tuple(parent),
        depth=tuple(depth),
        non_tree_edges=non_tree,
        _non_tree_index={e: i + 1 for i, e in enumerate(non_tree)},
    )


def fundamental_cycle(t: SpanningTree, phi: int) -> Path:
    """Cycle based at the root closing non-tree edge ``phi`` (1-based)."""
    if not 1 <= phi <= t.f:
        raise IndexOutOfRange(f"non-tree edge index {phi} not in 1..{t.f}")
    lo, hi = t.non_tree_edges[phi - 1]
    return reduce_path(inverse_path(t.path_to_root(lo)) + t.path_to_root(hi))


def fundamental_cycles(t: SpanningTree) -> list[Path]:
    return [fundamental_cycle(t, phi) for phi in range(1, t.f + 1)]


def cycle_decompose(c: Sequence[int], t: SpanningTree) -> np.ndarray:
    """Signed traversal counts of each non-tree edge along the cycle ``c``.

    The result ``x`` expresses ``c`` in the fundamental-cycle basis: for any
    gauge potential, ``flux(c) == sum(x[phi] * flux(c_phi))``.
    """
    c = tuple(int(j) for j in c)
    if len(c) == 0 or c[0] != c[-1]:
        raise NotACycle(f"path {c} is not closed")
    try:
        check_path(t.graph, c)
    except PathNotOnGraph as exc:
        raise NotACycle(str(exc)) from None
    x = np.zeros(t.f, dtype=np.int64)
    for a, b in zip(c, c[1:]):
        hit = t.non_tree_index(a, b)
        if hit is not None:
            x[hit[0] - 1] += hit[1]
    return x
