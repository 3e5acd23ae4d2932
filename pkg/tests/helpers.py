"""Small graph builders and hypothesis strategies shared by the tests."""

import networkx as nx
from hypothesis import strategies as st

from fvslab.graph import Graph


def from_nx(h):
    return Graph.from_networkx(nx.convert_node_labels_to_integers(h))


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return from_nx(nx.complete_graph(n))


@st.composite
def simple_graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = set(chosen)
    if connected:
        for k in range(1, n):
            edges.add((draw(st.integers(0, k - 1)), k))
    return Graph(range(n), edges)


@st.composite
def multigraphs(draw, max_n=7, max_m=12):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_m))
    return Graph(range(n), edges)


@st.composite
def subcubic_graphs(draw, max_n=12):
    """Connected subcubic graphs: a random tree of max degree 3 plus extra edges."""
    n = draw(st.integers(1, max_n))
    deg = [0] * n
    edges = set()
    for k in range(1, n):
        options = [v for v in range(k) if deg[v] < 3]
        v = draw(st.sampled_from(options))
        edges.add((v, k))
        deg[v] += 1
        deg[k] += 1
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    for u, v in extra:
        if u != v and deg[u] < 3 and deg[v] < 3 and (min(u, v), max(u, v)) not in edges:
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
    return Graph(range(n), edges)

