import numpy as np
import pytest

from qgraphstats import catalog

# Graphs with known phase counts: name -> (graph, ab, two_body, discrete)
KNOWN = {
    **{f"L{n}": (catalog.linear(n), 0, 0, []) for n in range(3, 9)},
    **{f"C{n}": (catalog.circular(n), 1, 0, []) for n in range(3, 9)},
    **{f"S{e}": (catalog.star(e), 0, (e - 1) * (e - 2) // 2, []) for e in range(3, 7)},
    "lasso": (catalog.lasso(), 1, 1, []),
    "bowtie": (catalog.bowtie(), 2, 2, []),
    "K5": (catalog.complete(5), 6, 0, [2]),
    "K33": (catalog.complete_bipartite(3, 3), 4, 0, [2]),
    "K5-molecule": (catalog.k5_molecule(), 12, 6, [2, 2]),
}

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
