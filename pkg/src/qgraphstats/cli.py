"""Command-line interface: ``qgraphstats {classify,spectrum,sweep,landau,verify}``.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import __version__
from .errors import QGraphError
from .gauge import TWO_PI
from .graph import Graph, read_edge_list
from .pairs import build_two_particle
from .quantum import (
    apply_gauge,
    eigensolve,
    kinetic_hamiltonian,
    landau_experiment,
    spectral_flow,
    two_particle_hamiltonian,
)
from .statistics import (
    PhaseAssignment,
    PhaseClassification,
    classify,
    classify_graph,
    constraint_matrix,
    synthesize_gauge,
)
from .verify import bundled_graphs, run_verification

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("qgraphstats")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cycle_multiplicities(cls: PhaseClassification, row) -> list[dict]:
    """Describe sum_phi row[phi] * c_phi as a list of G2 non-tree edges with counts."""
    g2 = cls.system.g2
    out = []
    for (u, x), count in zip(cls.system.t2.non_tree_edges, row):
        if count:
            out.append({"edge": [list(g2.pair(u)), list(g2.pair(x))], "count": int(count)})
    return out


def _original(g: Graph, j: int) -> int:
    return g.labels[j - 1]


def classification_report(g: Graph, cls: PhaseClassification) -> dict:
    rep = {"version": __version__}
    rep.update(cls.report())
    rep["ab"] = rep.pop("ab_count")
    rep["two_body"] = rep.pop("two_body_count")
    rep["vertex_labels"] = list(g.labels)
    rep["edges"] = [list(e) for e in g.edges]
    Q = cls.snf.Q
    r = cls.rank
    rep["g2_tree_root"] = list(cls.system.g2.pair(cls.system.t2.root))
    rep["discrete_witnesses"] = [
        {"divisor": d, "fundamental_cycle_multiplicities": _cycle_multiplicities(cls, Q[cls.p + k])}
        for k, d in enumerate(cls.discrete_divisors)
    ]
    rep["free_phase_cycles"] = [
        {"phase": l, "fundamental_cycle_multiplicities": _cycle_multiplicities(cls, Q[r + l])}
        for l in range(cls.s)
    ]
    if cls.ab_mode == "anchored":
        a = cls.anchors
        rep["anchored_cycles"] = [
            {"base_cycle": [_original(g, j) for j in c], "anchor": _original(g, k)}
            for c, k in zip(a.base_cycles, a.anchors)
        ]
    elif cls.ab_mode == "circular":
        rep["anchored_cycles"] = []
        rep["note"] = "circular graph: the free phase is generated by a flux through the ring"
    return rep


def _assignment(cls: PhaseClassification, alpha, discrete) -> PhaseAssignment:
    alpha = list(alpha or [])
    discrete = list(discrete or [])
    if not alpha and not discrete:
        return PhaseAssignment((0.0,) * cls.s, (0,) * cls.q)
    return PhaseAssignment(tuple(alpha), tuple(discrete))


def _emit(text: str, output):
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    g = read_edge_list(args.input)
    cls = classify_graph(g)
    _emit(json.dumps(classification_report(g, cls), indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = read_edge_list(args.input)
    g2 = build_two_particle(g)
    cls = classify(constraint_matrix(g2))
    assignment = _assignment(cls, args.alpha, args.discrete)
    h2 = two_particle_hamiltonian(kinetic_hamiltonian(g), args.sigma, g2)
    spec = eigensolve(apply_gauge(h2, synthesize_gauge(cls, assignment)))
    buf = io.StringIO()
    buf.write(f"# qgraphstats {__version__}\n")
    buf.write(f"# sigma={args.sigma}\n")
    buf.write(f"# alpha={json.dumps(list(assignment.alpha))}\n")
    buf.write(f"# discrete={json.dumps(list(assignment.discrete))}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "eigenvalue"])
    for i, ev in enumerate(spec.eigenvalues):
        w.writerow([i, repr(float(ev))])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    g = read_edge_list(args.input)
    g2 = build_two_particle(g)
    cls = classify(constraint_matrix(g2))
    base = _assignment(cls, args.alpha, args.discrete)
    if cls.s == 0:
        raise QGraphError("graph has no free phases to sweep")
    if not 0 <= args.phase < cls.s:
        raise QGraphError(f"--phase must be in 0..{cls.s - 1}")
    grid = np.linspace(0.0, TWO_PI, args.steps)
    path = []
    for a in grid:
        alpha = list(base.alpha)
        alpha[args.phase] = float(a)
        path.append(PhaseAssignment(tuple(alpha), base.discrete))
    res = spectral_flow(g, path, sigma=args.sigma, workers=args.workers)
    buf = io.StringIO()
    buf.write(f"# qgraphstats {__version__}\n")
    buf.write(f"# sigma={args.sigma} phase={args.phase} steps={args.steps}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "alpha"] + [f"E{i}" for i in range(g2.v2)])
    for i, (a, row) in enumerate(zip(grid, res.eigenvalues)):
        w.writerow([i, repr(float(a))] + [repr(float(x)) for x in row])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_landau(args) -> int:
    res = landau_experiment(args.N, args.r, args.s, args.t, args.p)
    out = {"version": __version__}
    out.update(res.to_dict())
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        graphs = {args.input: (read_edge_list(args.input), None)}
    else:
        graphs = bundled_graphs()
    checks = run_verification(graphs, seed=args.seed, samples=args.samples, tol=args.tol,
                              corrupt=args.corrupt_hook)
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgraphstats", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, need_input=True):
        p.add_argument("--input", "-i", required=need_input, help="edge-list file")
        p.add_argument("--output", "-o", help="write here instead of stdout")

    def phases(p):
        p.add_argument("--sigma", type=int, choices=(1, -1), default=1,
                       help="+1 hard-core bosons (default), -1 fermions")
        p.add_argument("--alpha", type=float, action="append",
                       help="free phase in radians, repeat once per phase (default: all 0)")
        p.add_argument("--discrete", type=int, action="append",
                       help="discrete selection m_k, repeat once per divisor (default: all 0)")

    p = sub.add_parser("classify", help="count and describe statistics phases (JSON)")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", help="two-particle spectrum for a phase assignment (CSV)")
    common(p)
    phases(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="spectral flow over one free phase on [0, 2pi] (CSV)")
    common(p)
    phases(p)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--phase", type=int, default=0, help="index of the free phase to sweep")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("landau", help="localization under a non-topological flux square (JSON)")
    p.add_argument("--output", "-o")
    p.add_argument("--N", type=int, default=40)
    p.add_argument("--r", type=int, default=10)
    p.add_argument("--s", type=int, default=25)
    p.add_argument("--t", type=int, default=5)
    p.add_argument("--p", type=int, default=1)
    p.set_defaults(func=cmd_landau)

    p = sub.add_parser("verify", help="run consistency checks on the bundled corpus or one graph")
    common(p, need_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50, help="random graphs for the oracle check")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--corrupt-hook", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (QGraphError, OSError) as exc:
        print(f"qgraphstats: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
