"""First homology of the two-particle cell complex.

Cells: nodes of G2 (0-cells), edges of G2 (1-cells) and the contractible
squares ``c_{eps,phi}`` (2-cells).  H_1 = ker d1 / im d2 = Z^betti + torsion.
This route never touches spanning trees or the cycle basis, so it serves as
an independent check on :mod:`qgraphstats.statistics`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import intlattice
from .errors import NotAComplex
from .pairs import ContractibleCycle, TwoParticleGraph


@dataclass(frozen=True)
class ChainComplex:
    d1: np.ndarray  # v2 x e2
    d2: np.ndarray  # e2 x g2

    def is_complex(self) -> bool:
        prod = intlattice.matmul(self.d1, self.d2)
        return not np.any(prod != 0)


def build_complex(g2: TwoParticleGraph, contractibles: Sequence[ContractibleCycle]) -> ChainComplex:
    edge_col = {e: i for i, e in enumerate(g2.edges)}
    d1 = np.zeros((g2.v2, g2.e2), dtype=object)
    for i, (u, x) in enumerate(g2.edges):
        d1[u - 1, i] = -1
        d1[x - 1, i] = 1
    d2 = np.zeros((g2.e2, len(contractibles)), dtype=object)
    for col, sq in enumerate(contractibles):
        for a, b in zip(sq.labels, sq.labels[1:]):
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            d2[edge_col[key], col] += sign
    return ChainComplex(d1, d2)


def h1(c: ChainComplex) -> tuple[int, tuple[int, ...]]:
    """``(betti, torsion)`` of ker d1 / im d2."""
    if not c.is_complex():
        raise NotAComplex("d1 @ d2 != 0")
    e2 = c.d1.shape[1]
    rank_d1 = intlattice.snf(c.d1).rank
    s2 = intlattice.snf(c.d2)
    return e2 - rank_d1 - s2.rank, s2.torsion


def graph_h1(g2: TwoParticleGraph) -> tuple[int, tuple[int, ...]]:
    from .pairs import contractible_cycles

    return h1(build_complex(g2, contractible_cycles(g2.base, g2)))
