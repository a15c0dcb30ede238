import itertools

import numpy as np
import pytest

from specclique.graph import Graph


def random_graph(rng: np.random.Generator, n: int, p: float, label: str | None = None) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T, label=label)


def brute_force_omega(g: Graph) -> int:
    """Largest vertex subset whose pairs are all adjacent, by plain enumeration."""
    best = 1
    for size in range(2, g.n + 1):
        found = False
        for sub in itertools.combinations(range(g.n), size):
            if all(g.adj[a, b] for a, b in itertools.combinations(sub, 2)):
                found = True
                break
        if not found:
            break
        best = size
    return best


def brute_force_chi(g: Graph) -> int:
    for k in range(1, g.n + 1):
        for colouring in itertools.product(range(k), repeat=g.n):
            if all(colouring[a] != colouring[b] for a, b in g.edges()):
                return k
    return g.n


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
