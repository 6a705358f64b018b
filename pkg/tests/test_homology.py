import numpy as np
import pytest

from conftest import KNOWN
from qgraphstats import catalog
from qgraphstats.errors import NotAComplex
from qgraphstats.homology import ChainComplex, build_complex, graph_h1, h1
from qgraphstats.intlattice import as_int_matrix, rank
from qgraphstats.pairs import build_two_particle, contractible_cycles
from qgraphstats.statistics import classify, constraint_matrix
from qgraphstats.verify import random_connected_graph


def complex_for(g):
    g2 = build_two_particle(g)
    return g2, build_complex(g2, contractible_cycles(g, g2))


def test_c3_complex():
    _, c = complex_for(catalog.circular(3))
    assert c.d1.shape == (3, 3) and c.d2.shape == (3, 0)
    assert all(sorted(col) == [-1, 0, 1] for col in c.d1.T.tolist())


def test_l4_square():
    _, c = complex_for(catalog.linear(4))
    assert c.d2.shape[1] == 1
    assert sorted(abs(x) for x in c.d2[:, 0]) == [0, 0, 1, 1, 1, 1]


def test_k5_squares():
    _, c = complex_for(catalog.complete(5))
    assert c.d2.shape[1] == 15
    assert all(sum(abs(x) for x in col) == 4 for col in c.d2.T)


@pytest.mark.parametrize(
    "g, expected",
    [
        (catalog.complete_bipartite(3, 3), (4, (2,))),
        (catalog.star(5), (6, ())),
        (catalog.linear(6), (0, ())),
        (catalog.k5_molecule(), (18, (2, 2))),
    ],
)
def test_h1_examples(g, expected):
    assert graph_h1(build_two_particle(g)) == expected


@pytest.mark.parametrize("name", list(KNOWN))
def test_oracle_on_known_graphs(name):
    g = KNOWN[name][0]
    g2, c = complex_for(g)
    assert c.is_complex()
    cls = classify(constraint_matrix(g2))
    assert h1(c) == (cls.s, cls.discrete_divisors)


def test_oracle_on_random_graphs(rng):
    for _ in range(120):
        g = random_connected_graph(rng, v_max=7)
        g2, c = complex_for(g)
        assert c.is_complex()
        cls = classify(constraint_matrix(g2))
        assert h1(c) == (cls.s, cls.discrete_divisors)
        # G2 is connected, so d1 has rank v2 - 1
        assert rank(c.d1) == g2.v2 - 1


def test_not_a_complex():
    d1 = as_int_matrix([[1, -1], [-1, 1]])
    d2 = as_int_matrix([[1], [0]])
    with pytest.raises(NotAComplex):
        h1(ChainComplex(d1, d2))


def test_torsion_example_by_hand():
    # a single 2-cell glued twice along one loop: H1 = Z/2
    d1 = np.zeros((1, 1), dtype=object)
    d2 = as_int_matrix([[2]])
    assert h1(ChainComplex(d1, d2)) == (0, (2,))
