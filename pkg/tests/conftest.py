from __future__ import annotations

from itertools import combinations

import networkx as nx
from hypothesis import strategies as st

from dissociation.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def brute_i_d(g: Graph, d: int) -> int:
    """Largest vertex set inducing max degree <= d, by trying every subset."""
    for size in range(g.n, 0, -1):
        for subset in combinations(range(g.n), size):
            mask = sum(1 << v for v in subset)
            if all((g.adj[v] & mask).bit_count() <= d for v in subset):
                return size
    return 0


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, chosen) if keep]
    if connected:
        # hang a random spanning tree underneath
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    return Graph.from_edges(n, edges)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
