"""Self-consistency checks run by ``qgraphstats verify``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from . import catalog, intlattice
from .errors import QGraphError
from .gauge import fermi_gauge
from .graph import Graph, build_graph
from .homology import build_complex, h1
from .pairs import build_two_particle
from .quantum import (
    apply_gauge,
    distinguished_equivalence_check,
    eigensolve,
    kinetic_hamiltonian,
    two_particle_hamiltonian,
)
from .statistics import (
    ab_anchor_cycles,
    augmented_matrix,
    classify,
    classify_graph,
    classify_with_ab,
    constraint_matrix,
    is_topological,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def random_connected_graph(rng: np.random.Generator, v_max: int = 7, v_min: int = 3) -> Graph:
    """Random tree on v vertices plus each remaining pair with probability ~U(0, 0.6)."""
    v = int(rng.integers(v_min, v_max + 1))
    edges = {(int(rng.integers(1, k)), k) for k in range(2, v + 1)}
    density = rng.uniform(0.0, 0.6)
    for a, b in combinations(range(1, v + 1), 2):
        if (a, b) not in edges and rng.random() < density:
            edges.add((a, b))
    return build_graph(sorted(edges))


def random_graphs(seed: int, samples: int, v_max: int = 7) -> list[Graph]:
    rng = np.random.default_rng(seed)
    return [random_connected_graph(rng, v_max) for _ in range(samples)]


def oracle_agreement(g: Graph) -> tuple[bool, str]:
    g2 = build_two_particle(g)
    cs = constraint_matrix(g2)
    cls = classify(cs)
    betti, torsion = h1(build_complex(g2, cs.contractibles))
    ok = (betti, torsion) == (cls.s, cls.discrete_divisors)
    return ok, f"statistics (s={cls.s}, {list(cls.discrete_divisors)}) vs homology (betti={betti}, {list(torsion)})"


def fermi_spectrum_error(g: Graph) -> float:
    g2 = build_two_particle(g)
    h = kinetic_hamiltonian(g)
    plus = two_particle_hamiltonian(h, 1, g2)
    minus = two_particle_hamiltonian(h, -1, g2)
    a = eigensolve(apply_gauge(plus, fermi_gauge(g2))).eigenvalues
    b = eigensolve(minus).eigenvalues
    return float(np.max(np.abs(a - b), initial=0.0))


def check_graph(name: str, g: Graph, expected: dict | None = None, tol: float = 1e-9) -> list[Check]:
    checks = []
    try:
        cls = classify_graph(g)
    except QGraphError as exc:
        return [Check(f"{name}: classify", False, f"{type(exc).__name__}: {exc}")]
    summary = f"ab={cls.ab_count} two_body={cls.two_body_count} discrete={list(cls.discrete_divisors)}"
    if expected is not None:
        got = {"ab": cls.ab_count, "two_body": cls.two_body_count, "discrete": list(cls.discrete_divisors)}
        checks.append(Check(f"{name}: phase counts", got == expected, summary))
    else:
        checks.append(Check(f"{name}: classify", cls.ab_count + cls.two_body_count == cls.s, summary))
    ok, detail = oracle_agreement(g)
    checks.append(Check(f"{name}: homology oracle", ok, detail))
    cx = build_complex(cls.system.g2, cls.system.contractibles)
    checks.append(Check(f"{name}: d1.d2 = 0", cx.is_complex()))
    checks.append(Check(f"{name}: Fermi gauge topological", is_topological(fermi_gauge(cls.system.g2), cls.system, tol)))
    err = fermi_spectrum_error(g)
    checks.append(Check(f"{name}: Fermi-gauged Bose spectrum = Fermi spectrum", err <= tol, f"max diff {err:.2e}"))
    for sigma in (1, -1):
        try:
            rep = distinguished_equivalence_check(kinetic_hamiltonian(g), sigma)
            checks.append(Check(f"{name}: U^sigma equivalence (sigma={sigma:+d})", True,
                                f"errors {rep.conjugation_error:.1e}, {rep.fermi_error:.1e}"))
        except QGraphError as exc:
            checks.append(Check(f"{name}: U^sigma equivalence (sigma={sigma:+d})", False, str(exc)))
    return checks


def corrupted_classification_check(g: Graph) -> Check:
    """Test hook: classify with a bogus extra row (twice an anchor row) appended to R.

    The extra row changes the torsion of R but not of R*, so the check fails
    with InconsistentDiscretePhases.
    """
    g2 = build_two_particle(g)
    cs = constraint_matrix(g2)
    anchors = ab_anchor_cycles(g, g2)
    bogus = 2 * augmented_matrix(cs, anchors)[:1]
    bad = replace(cs, R=np.vstack([cs.R, bogus]))
    try:
        classify_with_ab(bad, anchors)
    except QGraphError as exc:
        return Check("corrupted R: classify_with_ab", False, f"{type(exc).__name__}: {exc}")
    return Check("corrupted R: classify_with_ab", True)


def snf_self_test(seed: int, count: int = 200) -> Check:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        r, c = (int(x) for x in rng.integers(0, 9, size=2))
        m = intlattice.as_int_matrix(rng.integers(-5, 6, size=(r, c)))
        res = intlattice.snf(m)
        if not (
            np.array_equal(intlattice.matmul(intlattice.matmul(res.P, res.D), res.Q), m)
            and intlattice.is_smith_form(res.D)
            and res.rank == intlattice.rank(m)
        ):
            return Check("SNF identities on random matrices", False, f"failed on {m.tolist()}")
    return Check("SNF identities on random matrices", True, f"{count} matrices")


def run_verification(graphs: dict[str, tuple[Graph, dict | None]], seed: int = 0, samples: int = 50,
                     tol: float = 1e-9, corrupt: bool = False) -> list[Check]:
    checks: list[Check] = []
    for name, (g, expected) in graphs.items():
        checks.extend(check_graph(name, g, expected, tol))
    if samples:
        bad = []
        for i, g in enumerate(random_graphs(seed, samples)):
            if g.v < 3:
                continue
            ok, detail = oracle_agreement(g)
            if not ok:
                bad.append(f"#{i} {g.edges}: {detail}")
        checks.append(Check(f"random graphs (seed={seed}, n={samples}): statistics = homology", not bad, "; ".join(bad)))
        checks.append(snf_self_test(seed))
    if corrupt:
        checks.append(corrupted_classification_check(catalog.complete(5)))
    for c in checks:
        log.info(c.line())
    return checks


def bundled_graphs() -> dict[str, tuple[Graph, dict]]:
    man = catalog.corpus_manifest()
    return {name: (catalog.corpus_graph(name), entry["expected"]) for name, entry in man.items()}
