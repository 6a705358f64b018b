"""Two-particle configuration graphs.

``TwoParticleGraph`` is the graph of unordered pairs of distinct vertices in
which one particle hops along a base edge while the other stays put.  Its
nodes ``(j, l)``, ``j < l``, are numbered ``1..v2`` in lexicographic order, so
that it doubles as an ordinary :class:`~qgraphstats.graph.Graph`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import (
    DisconnectedConfigurationSpace,
    DisconnectedGraph,
    NotACycle,
    PathNotOnGraph,
    TooFewVertices,
)
from .graph import Graph, Path, check_path

Pair = tuple[int, int]


class TwoParticleGraph:
    def __init__(self, base: Graph):
        if base.v < 3:
            raise TooFewVertices(f"two-particle graph needs v >= 3, got v = {base.v}")
        self.base = base
        self.nodes: tuple[Pair, ...] = tuple(combinations(base.vertices, 2))
        self.index: dict[Pair, int] = {nd: i + 1 for i, nd in enumerate(self.nodes)}
        edges = []
        moves = {}
        for a, b in base.edges:
            for w in base.vertices:
                if w == a or w == b:
                    continue
                u, x = self.node(a, w), self.node(b, w)
                edges.append((u, x) if u < x else (x, u))
                # record the move in the direction lower node -> higher node
                moves[edges[-1]] = (a, b, w) if u < x else (b, a, w)
        try:
            self.graph = Graph(len(self.nodes), edges)
        except DisconnectedGraph as exc:
            raise DisconnectedConfigurationSpace(str(exc)) from None
        self._moves = moves

    @property
    def v2(self) -> int:
        return self.graph.v

    @property
    def e2(self) -> int:
        return self.graph.e

    @property
    def edges(self):
        return self.graph.edges

    def node(self, j: int, l: int) -> int:
        """Node label of the unordered configuration ``{j, l}``."""
        return self.index[(j, l) if j < l else (l, j)]

    def pair(self, n: int) -> Pair:
        return self.nodes[n - 1]

    def move(self, u: int, x: int) -> tuple[int, int, int]:
        """``(from, to, spectator)`` base vertices for the G2 step ``u -> x``."""
        if u < x:
            return self._moves[(u, x)]
        a, b, w = self._moves[(x, u)]
        return b, a, w

    def as_labels(self, seq: Sequence) -> Path:
        """Accept a G2 path given as node labels or as vertex pairs."""
        out = []
        for item in seq:
            if isinstance(item, (tuple, list)):
                j, l = item
                if j == l or (min(j, l), max(j, l)) not in self.index:
                    raise PathNotOnGraph(f"{tuple(item)} is not a two-particle configuration")
                out.append(self.node(j, l))
            else:
                out.append(int(item))
        return check_path(self.graph, out)

    def as_pairs(self, labels: Sequence[int]) -> tuple[Pair, ...]:
        return tuple(self.pair(n) for n in labels)

    @cached_property
    def adjacency(self) -> np.ndarray:
        return self.graph.adjacency

    def __repr__(self):
        return f"TwoParticleGraph(v={self.base.v}, v2={self.v2}, e2={self.e2})"


def build_two_particle(g: Graph) -> TwoParticleGraph:
    return TwoParticleGraph(g)


def pair_adjacency(base: Graph) -> np.ndarray:
    """A_2 evaluated entry by entry from the base adjacency matrix.

    Independent of :class:`TwoParticleGraph`; used to cross-check it.
    """
    a = base.adjacency
    nodes = list(combinations(range(base.v), 2))
    out = np.zeros((len(nodes), len(nodes)), dtype=np.int64)
    for s, (j, l) in enumerate(nodes):
        for t, (k, m) in enumerate(nodes):
            out[s, t] = (
                (j == k) * a[l, m] + (j == m) * a[l, k] + a[j, k] * (l == m) + a[j, m] * (l == k)
            )
    return out


@dataclass(frozen=True)
class ContractibleCycle:
    """The 4-cycle on G2 in which particles alternate along disjoint edges."""

    eps: tuple[int, int]
    phi: tuple[int, int]
    pairs: tuple[Pair, ...]
    labels: Path


def contractible_cycles(g: Graph, g2: TwoParticleGraph) -> list[ContractibleCycle]:
    out = []
    for eps, phi in combinations(g.edges, 2):
        if set(eps) & set(phi):
            continue
        (e_lo, e_hi), (f_lo, f_hi) = eps, phi
        seq = [(e_lo, f_lo), (e_hi, f_lo), (e_hi, f_hi), (e_lo, f_hi), (e_lo, f_lo)]
        pairs = tuple((min(x), max(x)) for x in seq)
        out.append(ContractibleCycle(eps, phi, pairs, tuple(g2.node(*x) for x in seq)))
    return out


def disjoint_pair_count(g: Graph) -> int:
    """g2 = e(e-1)/2 - sum_j deg(j)(deg(j)-1)/2."""
    return g.e * (g.e - 1) // 2 - sum(g.degree(j) * (g.degree(j) - 1) // 2 for j in g.vertices)


class CycleKind(enum.Enum):
    DIRECT = "direct"
    EXCHANGE = "exchange"


@dataclass(frozen=True)
class ProjectedCycle:
    p: Path
    q: Path
    kind: CycleKind


def project_cycle(g2: TwoParticleGraph, c2: Sequence) -> ProjectedCycle:
    """Split a G2 cycle into the single-particle paths of the two particles.

    Particle 1 starts on the smaller vertex of the first configuration.
    """
    try:
        c2 = g2.as_labels(c2)
    except PathNotOnGraph as exc:
        raise NotACycle(str(exc)) from None
    if c2[0] != c2[-1]:
        raise NotACycle("two-particle path is not closed")
    x, y = g2.pair(c2[0])
    start = (x, y)
    p, q = [x], [y]
    for u, w in zip(c2, c2[1:]):
        src, dst, _ = g2.move(u, w)
        if x == src:
            x = dst
            p.append(x)
        else:
            y = dst
            q.append(y)
    kind = CycleKind.DIRECT if (x, y) == start else CycleKind.EXCHANGE
    return ProjectedCycle(tuple(p), tuple(q), kind)


class DistinguishedGraph:
    """Ordered pairs ``(j, l)``, ``j != l``: particle 1 at ``j``, particle 2 at ``l``."""

    def __init__(self, base: Graph):
        if base.v < 2:
            raise TooFewVertices("distinguished graph needs v >= 2")
        self.base = base
        self.nodes: tuple[Pair, ...] = tuple(
            (j, l) for j in base.vertices for l in base.vertices if j != l
        )
        self.index = {nd: i for i, nd in enumerate(self.nodes)}
        a = base.adjacency
        n = len(self.nodes)
        adj = np.zeros((n, n), dtype=np.int64)
        for s, (j, l) in enumerate(self.nodes):
            for t, (k, m) in enumerate(self.nodes):
                adj[s, t] = a[j - 1, k - 1] * (l == m) + a[l - 1, m - 1] * (j == k)
        self.adjacency = adj
        self.edges = tuple(
            (s, t) for s in range(n) for t in range(s + 1, n) if adj[s, t]
        )

    def exchange_permutation(self) -> np.ndarray:
        """perm[i] is the index of the exchanged configuration of node i."""
        return np.array([self.index[(l, j)] for j, l in self.nodes])


def build_distinguished(g: Graph) -> DistinguishedGraph:
    return DistinguishedGraph(g)
