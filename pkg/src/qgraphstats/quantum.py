"""Tight-binding Hamiltonians on graphs and their two-particle versions."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    EquivalenceViolation,
    HostMismatch,
    WindowOutOfRange,
)
from .gauge import TWO_PI, GaugePotential, fermi_gauge
from .graph import Graph, build_graph
from .pairs import DistinguishedGraph, TwoParticleGraph, build_two_particle

HERMITIAN_TOL = 1e-12
EQUIVALENCE_TOL = 1e-12


@dataclass(frozen=True)
class Hamiltonian:
    host: Graph
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))

    def respects_adjacency(self) -> bool:
        off = ~np.eye(self.dim, dtype=bool) & (self.host.adjacency == 0)
        return not np.any(self.matrix[off] != 0)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    residual: float = 0.0


def kinetic_hamiltonian(g: Graph) -> Hamiltonian:
    """Kinetic energy D - A (nonnegative spectrum)."""
    a = g.adjacency.astype(complex)
    return Hamiltonian(g, np.diag(a.sum(axis=1)) - a)


def apply_gauge(h: Hamiltonian, omega: GaugePotential) -> Hamiltonian:
    """Multiply each hopping amplitude ``H_jk`` by ``exp(i Omega_jk)``."""
    if omega.host != h.host:
        raise HostMismatch("gauge potential and Hamiltonian live on different graphs")
    return Hamiltonian(h.host, h.matrix * np.exp(1j * omega.matrix()))


def two_particle_hamiltonian(h: Hamiltonian, sigma: int, g2: TwoParticleGraph) -> Hamiltonian:
    """H2^sigma on unordered pairs; sigma = -1 fermions, +1 hard-core bosons.

    <jl|H2|km> = d_jk H_lm + sigma d_jm H_lk + sigma d_lk H_jm + d_lm H_jk
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    if h.host != g2.base:
        raise HostMismatch("one-particle Hamiltonian is not on the base graph of g2")
    H = h.matrix
    nodes = np.array(g2.nodes) - 1
    J, L = nodes[:, 0], nodes[:, 1]
    j, l = J[:, None], L[:, None]
    k, m = J[None, :], L[None, :]
    out = (
        (j == k) * H[l, m]
        + sigma * (j == m) * H[l, k]
        + sigma * (l == k) * H[j, m]
        + (l == m) * H[j, k]
    )
    return Hamiltonian(g2.graph, out)


def distinguished_hamiltonian(h: Hamiltonian, dg: DistinguishedGraph) -> np.ndarray:
    """Hbar_{jl,km} = H_jk d_lm + H_lm d_jk on ordered pairs."""
    H = h.matrix
    nodes = np.array(dg.nodes) - 1
    j, l = nodes[:, 0][:, None], nodes[:, 1][:, None]
    k, m = nodes[:, 0][None, :], nodes[:, 1][None, :]
    return H[j, k] * (l == m) + H[l, m] * (j == k)


def symmetrizer(dg: DistinguishedGraph, g2: TwoParticleGraph, sigma: int) -> np.ndarray:
    """U^sigma as a (v(v-1) x v2) matrix: |jl> -> (|jl> + sigma |lj>)/sqrt(2)."""
    u = np.zeros((len(dg.nodes), g2.v2))
    for col, (j, l) in enumerate(g2.nodes):
        u[dg.index[(j, l)], col] = 1 / np.sqrt(2)
        u[dg.index[(l, j)], col] = sigma / np.sqrt(2)
    return u


@dataclass(frozen=True)
class EquivalenceReport:
    sigma: int
    conjugation_error: float
    fermi_error: float

    @property
    def passed(self) -> bool:
        return max(self.conjugation_error, self.fermi_error) <= EQUIVALENCE_TOL


def distinguished_equivalence_check(h: Hamiltonian, sigma: int) -> EquivalenceReport:
    """Compare the identified and distinguished two-particle constructions.

    Checks ``U^sigma† Hbar U^sigma == H2^sigma`` and ``H2^- == exp(i Omega^F) * H2^+``
    entrywise; raises :class:`EquivalenceViolation` beyond 1e-12.
    """
    g = h.host
    g2 = build_two_particle(g)
    dg = DistinguishedGraph(g)
    hbar = distinguished_hamiltonian(h, dg)
    u = symmetrizer(dg, g2, sigma)
    conj = u.T @ hbar @ u
    h2 = two_particle_hamiltonian(h, sigma, g2).matrix
    err1 = float(np.max(np.abs(conj - h2), initial=0.0))
    plus = two_particle_hamiltonian(h, 1, g2).matrix
    minus = two_particle_hamiltonian(h, -1, g2).matrix
    err2 = float(np.max(np.abs(minus - np.exp(1j * fermi_gauge(g2).matrix()) * plus), initial=0.0))
    report = EquivalenceReport(sigma, err1, err2)
    if not report.passed:
        raise EquivalenceViolation(
            f"sigma={sigma}: conjugation error {err1:.3e}, Fermi-gauge error {err2:.3e}"
        )
    return report


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vecs), axis=0)
    lead = vecs[idx, np.arange(vecs.shape[1])]
    return vecs * (np.abs(lead) / lead)[None, :]


def eigensolve(h, want_vectors: bool = False) -> Spectrum:
    """Dense Hermitian diagonalization with a residual check.

    Eigenvectors (if requested) have their largest-magnitude component real
    and positive.
    """
    mat = h.matrix if isinstance(h, Hamiltonian) else np.asarray(h)
    if mat.size == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)) if want_vectors else None, 0.0)
    scale = max(np.max(np.abs(mat)), 1.0)
    if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL * scale:
        raise ValueError("matrix is not Hermitian")
    try:
        vals, vecs = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from None
    resid = float(np.max(np.linalg.norm(mat @ vecs - vecs * vals[None, :], axis=0)))
    norm = np.linalg.norm(mat, 2)
    if resid > 1e-8 * max(norm, 1.0):
        raise ConvergenceFailure(f"residual {resid:.3e} exceeds bound")
    return Spectrum(vals, _fix_phases(vecs) if want_vectors else None, resid)


@dataclass(frozen=True)
class SweepResult:
    assignments: tuple
    eigenvalues: np.ndarray  # (n_assignments, v2)


def spectral_flow(g: Graph, assignment_path: Sequence, sigma: int = 1, workers: int = 1) -> SweepResult:
    """Spectra of H2^sigma gauged by the topological potential of each assignment."""
    from .statistics import classify, constraint_matrix, synthesize_gauge

    g2 = build_two_particle(g)
    cls = classify(constraint_matrix(g2))
    h2 = two_particle_hamiltonian(kinetic_hamiltonian(g), sigma, g2)

    def one(assignment):
        return eigensolve(apply_gauge(h2, synthesize_gauge(cls, assignment))).eigenvalues

    assignment_path = tuple(assignment_path)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, assignment_path))
    else:
        rows = [one(a) for a in assignment_path]
    return SweepResult(assignment_path, np.array(rows).reshape(len(rows), g2.v2))


def linear_graph(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(1, n)])


def landau_potential(g2: TwoParticleGraph, r: int, s: int, t: int, p: int) -> GaugePotential:
    """Non-topological potential on two particles on L_N in a discrete Landau gauge.

    Sites are coordinates ``x = label - 1``.  A hop of the upper particle from
    ``b`` to ``b + 1`` with ``s <= b < s + t`` carries ``(2 pi p / t) * clamp(a - r, 0, t)``
    where ``a`` is the lower particle; all other hops carry zero.  Each square
    with lower edge in ``[r, r+t]`` and upper edge in ``[s, s+t]`` then encloses
    ``2 pi p / t``; every other square encloses a multiple of 2 pi.
    """
    step = TWO_PI * p / t

    def hop(src, dst, spectator):
        a, b, c = src - 1, dst - 1, spectator - 1
        if min(a, b) < c:
            return 0.0
        lo = min(a, b)
        if not s <= lo < s + t:
            return 0.0
        val = step * min(max(c - r, 0), t)
        return val if b > a else -val

    phases = np.array([hop(*g2.move(u, x)) for u, x in g2.edges])
    return GaugePotential(g2.graph, phases)


def window_nodes(g2: TwoParticleGraph, r: int, s: int, t: int) -> np.ndarray:
    """0-based node indices with lower particle in [r, r+t] and upper in [s, s+t]."""
    return np.array(
        [i for i, (j, l) in enumerate(g2.nodes) if r <= j - 1 <= r + t and s <= l - 1 <= s + t],
        dtype=int,
    )


def inverse_participation(vecs: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(vecs) ** 4, axis=0)


@dataclass(frozen=True)
class LandauResult:
    params: dict
    spectrum: Spectrum
    ipr: np.ndarray
    window_mass: np.ndarray
    localized: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "eigenvalues": self.spectrum.eigenvalues.tolist(),
            "ipr": self.ipr.tolist(),
            "window_mass": self.window_mass.tolist(),
            "localized_indices": [int(i) for i in np.flatnonzero(self.localized)],
        }


def landau_experiment(
    N: int, r: int, s: int, t: int, p: int, mass_threshold: float = 0.9, ipr_factor: float = 3.0
) -> LandauResult:
    """Diagonalize H2^- on L_N with flux 2*pi*p/t through each square of the window.

    A state counts as localized when at least ``mass_threshold`` of its weight
    sits on the window nodes and its IPR is at least ``ipr_factor`` times the
    median IPR.
    """
    if t < 1 or r < 0 or s < 0 or r + t > N - 1 or s + t > N - 1:
        raise WindowOutOfRange(f"window r={r}, s={s}, t={t} does not fit on L_{N} (sites 0..{N - 1})")
    g = linear_graph(N)
    g2 = build_two_particle(g)
    h2 = two_particle_hamiltonian(kinetic_hamiltonian(g), -1, g2)
    spec = eigensolve(apply_gauge(h2, landau_potential(g2, r, s, t, p)), want_vectors=True)
    vecs = spec.eigenvectors
    ipr = inverse_participation(vecs)
    mass = np.sum(np.abs(vecs[window_nodes(g2, r, s, t)]) ** 2, axis=0)
    localized = (mass >= mass_threshold) & (ipr >= ipr_factor * np.median(ipr))
    params = {"N": N, "r": r, "s": s, "t": t, "p": p, "mass_threshold": mass_threshold, "ipr_factor": ipr_factor}
    return LandauResult(params, spec, ipr, mass, localized)
