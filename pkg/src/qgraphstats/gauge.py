"""Gauge potentials: antisymmetric edge phases, fluxes, and standard constructions."""
from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .errors import BaseMismatch, DimensionMismatch
from .graph import Graph, SpanningTree, check_path, fundamental_cycle
from .pairs import TwoParticleGraph

TWO_PI = 2.0 * np.pi
TOL = 1e-9


def dist_to_2pi_lattice(x: float) -> float:
    """Distance from ``x`` to the nearest integer multiple of 2*pi."""
    return abs(x - TWO_PI * np.round(x / TWO_PI))


def wrap_phase(x):
    """Map phases to [0, 2*pi)."""
    return np.mod(x, TWO_PI)


class GaugePotential:
    """One phase per edge of ``host``.

    ``edge_phase[i]`` is the phase for stepping along ``host.edges[i]`` from its
    lower to its higher vertex; the reverse step carries the negative.
    """

    def __init__(self, host: Graph, edge_phase: Sequence[float] | None = None):
        self.host = host
        if edge_phase is None:
            edge_phase = np.zeros(host.e)
        phases = np.asarray(edge_phase, dtype=float).copy()
        if phases.shape != (host.e,):
            raise DimensionMismatch(f"expected {host.e} edge phases, got shape {phases.shape}")
        phases.setflags(write=False)
        self.edge_phase = phases

    def phase(self, j: int, k: int) -> float:
        """Omega_{jk}; zero when ``j`` and ``k`` are not adjacent."""
        if not self.host.adjacent(j, k):
            return 0.0
        i, sign = self.host.edge_index(j, k)
        return sign * self.edge_phase[i]

    def matrix(self) -> np.ndarray:
        out = np.zeros((self.host.v, self.host.v))
        for (a, b), w in zip(self.host.edges, self.edge_phase):
            out[a - 1, b - 1] = w
            out[b - 1, a - 1] = -w
        return out

    def __add__(self, other: "GaugePotential") -> "GaugePotential":
        if other.host != self.host:
            raise BaseMismatch("gauge potentials live on different graphs")
        return GaugePotential(self.host, self.edge_phase + other.edge_phase)

    def __neg__(self):
        return GaugePotential(self.host, -self.edge_phase)

    def __sub__(self, other):
        return self + (-other)

    def to_records(self) -> list[dict]:
        return [
            {"edge": [int(a), int(b)], "phase": float(w)}
            for (a, b), w in zip(self.host.edges, self.edge_phase)
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2)

    @classmethod
    def from_records(cls, host: Graph, records: Sequence[dict]) -> "GaugePotential":
        phases = np.zeros(host.e)
        for rec in records:
            a, b = rec["edge"]
            i, sign = host.edge_index(int(a), int(b))
            phases[i] = sign * float(rec["phase"])
        return cls(host, phases)

    @classmethod
    def from_json(cls, host: Graph, text: str) -> "GaugePotential":
        return cls.from_records(host, json.loads(text))

    def __repr__(self):
        return f"GaugePotential(host={self.host!r})"


def flux(omega: GaugePotential, p: Sequence[int]) -> float:
    """Sum of phases along the path ``p``."""
    p = check_path(omega.host, p)
    total = 0.0
    for a, b in zip(p, p[1:]):
        i, sign = omega.host.edge_index(a, b)
        total += sign * omega.edge_phase[i]
    return total


def is_trivial(omega: GaugePotential, t: SpanningTree, tol: float = TOL) -> bool:
    """True iff every fundamental-cycle flux lies in 2*pi*Z (within ``tol``)."""
    if t.graph != omega.host:
        raise BaseMismatch("spanning tree is not on the potential's host graph")
    return all(
        dist_to_2pi_lattice(flux(omega, fundamental_cycle(t, phi))) <= tol
        for phi in range(1, t.f + 1)
    )


def from_cycle_fluxes(t: SpanningTree, fluxes: Sequence[float]) -> GaugePotential:
    """Potential vanishing on the tree with flux ``fluxes[phi-1]`` through ``c_phi``."""
    fluxes = np.asarray(fluxes, dtype=float)
    if fluxes.shape != (t.f,):
        raise DimensionMismatch(f"expected {t.f} cycle fluxes, got shape {fluxes.shape}")
    g = t.graph
    phases = np.zeros(g.e)
    for (lo, hi), w in zip(t.non_tree_edges, fluxes):
        phases[g.edge_index(lo, hi)[0]] = w
    return GaugePotential(g, phases)


def from_vertex_phases(g: Graph, theta: Sequence[float], winding=None) -> GaugePotential:
    """Trivial potential theta_k - theta_j + 2*pi*M_jk on each edge (j, k)."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (g.v,):
        raise DimensionMismatch(f"expected {g.v} vertex phases")
    phases = np.array([theta[b - 1] - theta[a - 1] for a, b in g.edges])
    if winding is not None:
        phases = phases + TWO_PI * np.asarray(winding, dtype=float)
    return GaugePotential(g, phases)


def ab_lift(omega: GaugePotential, g2: TwoParticleGraph) -> GaugePotential:
    """Aharonov-Bohm potential on G2: each hop carries the base-edge phase."""
    if omega.host != g2.base:
        raise BaseMismatch("potential is not on the base graph of g2")
    phases = np.empty(g2.e2)
    for i, (u, x) in enumerate(g2.edges):
        src, dst, _ = g2.move(u, x)
        phases[i] = omega.phase(src, dst)
    return GaugePotential(g2.graph, phases)


def fermi_phase(jl: tuple[int, int], km: tuple[int, int], base: Graph) -> float:
    """Omega^F between configurations ``(j, l)`` and ``(k, m)`` (both ordered)."""
    (j, l), (k, m) = jl, km
    if j == m and base.adjacent(l, k):
        return np.pi
    if l == k and base.adjacent(j, m):
        return -np.pi
    return 0.0


def fermi_gauge(g2: TwoParticleGraph) -> GaugePotential:
    """Potential of +-pi on every hop that swaps the order of the two particles."""
    phases = np.array([fermi_phase(g2.pair(u), g2.pair(x), g2.base) for u, x in g2.edges])
    return GaugePotential(g2.graph, phases)

