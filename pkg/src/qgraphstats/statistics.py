"""Classification of two-particle statistics phases.

Pipeline: build G2 and its BFS tree, express every metrically contractible
4-cycle in the fundamental-cycle basis (matrix ``R``), and read the phases off
the Smith normal form of ``R``: divisors equal to one pin a flux to zero,
divisors ``d > 1`` give discrete phases ``2*pi*m/d``, and the ``f2 - rank``
remaining directions are free phases.  Appending the anchored one-particle
cycles to ``R`` separates Aharonov-Bohm phases from two-body phases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import intlattice
from .errors import (
    DimensionMismatch,
    InconsistentDiscretePhases,
    NoAnchorVertex,
)
from .gauge import (
    TOL,
    TWO_PI,
    GaugePotential,
    ab_lift,
    dist_to_2pi_lattice,
    flux,
    from_cycle_fluxes,
)
from .graph import Graph, Path, SpanningTree, cycle_decompose, cyclic_core, fundamental_cycles, spanning_tree
from .pairs import ContractibleCycle, TwoParticleGraph, contractible_cycles


@dataclass(frozen=True)
class ConstraintSystem:
    g2: TwoParticleGraph
    t2: SpanningTree
    contractibles: tuple[ContractibleCycle, ...]
    R: np.ndarray  # object dtype, g2 x f2

    @property
    def f2(self) -> int:
        return self.t2.f

    @property
    def n_constraints(self) -> int:
        return len(self.contractibles)


def constraint_matrix(g2: TwoParticleGraph) -> ConstraintSystem:
    t2 = spanning_tree(g2.graph, 1)
    cycles = tuple(contractible_cycles(g2.base, g2))
    rows = [cycle_decompose(c.labels, t2) for c in cycles]
    R = intlattice.as_int_matrix(rows, cols=t2.f)
    return ConstraintSystem(g2, t2, cycles, R)


@dataclass(frozen=True)
class AnchorCycles:
    """One-particle loops of G lifted to G2 with the other particle parked.

    ``base_tree`` fixes which fundamental cycles the Aharonov-Bohm phases refer to.
    """

    base_tree: SpanningTree
    base_cycles: tuple[Path, ...]
    anchors: tuple[int, ...]
    cycles: tuple[Path, ...]  # node labels on G2


def _anchor_for(g: Graph, cycle: Path) -> int | None:
    on_cycle = set(cyclic_core(cycle))
    return next((k for k in g.vertices if k not in on_cycle), None)


def ab_anchor_cycles(g: Graph, g2: TwoParticleGraph) -> AnchorCycles:
    """Anchored cycles ``c_{2;j}``: one particle runs round ``c_j``, the other sits at ``k_j``.

    BFS trees are tried from root 1 upward until every fundamental cycle
    misses some vertex.  Circular graphs have no such basis.
    """
    if g2.base != g:
        raise ValueError("g2 was not built from g")
    if g.is_circular():
        raise NoAnchorVertex("circular graphs have no anchor vertex; all free phases are Aharonov-Bohm")
    for root in g.vertices:
        t = spanning_tree(g, root)
        loops = [cyclic_core(c) for c in fundamental_cycles(t)]
        anchors = [_anchor_for(g, c) for c in loops]
        if all(k is not None for k in anchors):
            lifted = tuple(tuple(g2.node(j, k) for j in c) for c, k in zip(loops, anchors))
            return AnchorCycles(t, tuple(loops), tuple(anchors), lifted)
    raise NoAnchorVertex("every BFS cycle basis has a cycle through all vertices")


@dataclass
class PhaseClassification:
    """Counts of statistics phases plus everything needed to synthesize potentials.

    ``s`` free phases and ``discrete_divisors`` describe the group
    U(1)^s x Z/d_1 x ... of topological potentials modulo gauge.  When the
    Aharonov-Bohm split has been performed, ``ab_count + two_body_count == s``.
    """

    system: ConstraintSystem
    f: int
    f2: int
    g2: int
    rank: int
    p: int
    q: int
    discrete_divisors: tuple[int, ...]
    s: int
    snf: intlattice.SnfResult
    ab_count: int | None = None
    two_body_count: int | None = None
    augmented_rank: int | None = None
    augmented_snf: intlattice.SnfResult | None = None
    anchors: AnchorCycles | None = None
    ab_mode: str | None = None  # "anchored" | "circular"

    def report(self) -> dict:
        g, g2 = self.system.g2.base, self.system.g2
        out = {
            "v": g.v,
            "e": g.e,
            "f": self.f,
            "v2": g2.v2,
            "e2": g2.e2,
            "f2": self.f2,
            "g2": self.g2,
            "rank": self.rank,
            "p": self.p,
            "q": self.q,
            "s": self.s,
            "discrete_divisors": list(self.discrete_divisors),
            "ab_count": self.ab_count,
            "two_body_count": self.two_body_count,
            "augmented_rank": self.augmented_rank,
            "ab_mode": self.ab_mode,
        }
        return out


def classify(cs: ConstraintSystem) -> PhaseClassification:
    res = intlattice.snf(cs.R)
    divs = res.divisors
    p = sum(1 for d in divs if d == 1)
    g = cs.g2.base
    return PhaseClassification(
        system=cs,
        f=g.e - g.v + 1,
        f2=cs.f2,
        g2=cs.n_constraints,
        rank=len(divs),
        p=p,
        q=len(divs) - p,
        discrete_divisors=res.torsion,
        s=cs.f2 - len(divs),
        snf=res,
    )


def augmented_matrix(cs: ConstraintSystem, anchors: AnchorCycles) -> np.ndarray:
    rows = [cycle_decompose(c, cs.t2) for c in anchors.cycles]
    top = intlattice.as_int_matrix(rows, cols=cs.f2)
    return np.vstack([top, cs.R]) if cs.R.shape[0] else top


def classify_with_ab(cs: ConstraintSystem, anchors: AnchorCycles | None) -> PhaseClassification:
    """Classify and split free phases into Aharonov-Bohm and two-body parts.

    ``anchors=None`` is only valid for circular graphs, where the single free
    phase is generated by a flux through the ring.
    """
    base = classify(cs)
    g = cs.g2.base
    if anchors is None:
        if not g.is_circular():
            raise NoAnchorVertex("anchors are required for non-circular graphs")
        base.ab_count = base.f
        base.two_body_count = base.s - base.f
        base.ab_mode = "circular"
        return base
    R_star = augmented_matrix(cs, anchors)
    res = intlattice.snf(R_star)
    if res.torsion != base.discrete_divisors:
        raise InconsistentDiscretePhases(
            f"discrete divisors of R* {list(res.torsion)} differ from those of R {list(base.discrete_divisors)}"
        )
    base.ab_count = len(anchors.cycles)
    base.two_body_count = cs.f2 - res.rank
    base.augmented_rank = res.rank
    base.augmented_snf = res
    base.anchors = anchors
    base.ab_mode = "anchored"
    return base


def classify_graph(g: Graph) -> PhaseClassification:
    """Full pipeline including the Aharonov-Bohm / two-body split."""
    from .pairs import build_two_particle

    g2 = build_two_particle(g)
    cs = constraint_matrix(g2)
    if g.is_circular():
        return classify_with_ab(cs, None)
    return classify_with_ab(cs, ab_anchor_cycles(g, g2))


@dataclass(frozen=True)
class PhaseAssignment:
    """Values for the free phases (radians) and the discrete selections ``m_k``."""

    alpha: tuple[float, ...] = ()
    discrete: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "discrete", tuple(int(m) for m in self.discrete))


def _phi_vector(snf: intlattice.SnfResult, n: int, alpha, discrete) -> np.ndarray:
    divs = snf.divisors
    p = sum(1 for d in divs if d == 1)
    torsion = divs[p:]
    free = n - len(divs)
    if len(alpha) != free:
        raise DimensionMismatch(f"expected {free} free phases, got {len(alpha)}")
    if len(discrete) != len(torsion):
        raise DimensionMismatch(f"expected {len(torsion)} discrete selections, got {len(discrete)}")
    for m, d in zip(discrete, torsion):
        if not 0 <= m < d:
            raise DimensionMismatch(f"discrete selection {m} outside 0..{d - 1}")
    Phi = np.zeros(n)
    Phi[p : len(divs)] = [TWO_PI * m / d for m, d in zip(discrete, torsion)]
    Phi[len(divs) :] = alpha
    return Phi


def cycle_fluxes_for(snf: intlattice.SnfResult, Phi: np.ndarray) -> np.ndarray:
    """omega = Q^-1 Phi."""
    if Phi.size == 0:
        return np.zeros(0)
    return snf.Q_inv.astype(float) @ Phi


def synthesize_gauge(classification: PhaseClassification, assignment: PhaseAssignment) -> GaugePotential:
    """Topological potential on G2 realizing the given free and discrete phases."""
    c = classification
    Phi = _phi_vector(c.snf, c.f2, assignment.alpha, assignment.discrete)
    return from_cycle_fluxes(c.system.t2, cycle_fluxes_for(c.snf, Phi))


def synthesize_with_ab(
    classification: PhaseClassification,
    ab_phases: Sequence[float],
    two_body: Sequence[float] = (),
    discrete: Sequence[int] = (),
) -> GaugePotential:
    """Topological potential from Aharonov-Bohm, two-body and discrete phases.

    ``ab_phases[j]`` is the flux through fundamental cycle ``j+1`` of the base
    tree stored with the anchors (root-1 BFS tree for circular graphs).
    """
    c = classification
    g2 = c.system.g2
    if c.ab_mode is None:
        raise ValueError("classification has no Aharonov-Bohm split; use classify_with_ab")
    if len(ab_phases) != c.ab_count:
        raise DimensionMismatch(f"expected {c.ab_count} Aharonov-Bohm phases, got {len(ab_phases)}")
    if c.ab_mode == "circular":
        if len(two_body) or len(discrete):
            raise DimensionMismatch("circular graphs carry no two-body or discrete phases")
        tree = spanning_tree(g2.base, 1)
        return ab_lift(from_cycle_fluxes(tree, ab_phases), g2)
    Phi = _phi_vector(c.augmented_snf, c.f2, tuple(two_body), tuple(discrete))
    star = from_cycle_fluxes(c.system.t2, cycle_fluxes_for(c.augmented_snf, Phi))
    return star + ab_lift(from_cycle_fluxes(c.anchors.base_tree, ab_phases), g2)


def contractible_fluxes(omega2: GaugePotential, cs: ConstraintSystem) -> np.ndarray:
    return np.array([flux(omega2, c.labels) for c in cs.contractibles])


def is_topological(omega2: GaugePotential, cs: ConstraintSystem, tol: float = TOL) -> bool:
    """True iff the flux through every contractible 4-cycle lies in 2*pi*Z."""
    return all(dist_to_2pi_lattice(x) <= tol for x in contractible_fluxes(omega2, cs))
