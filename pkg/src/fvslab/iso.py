"""Canonical forms and isomorphism tests.

Canonical labelling is delegated to nauty through ``pynauty``.  Multigraphs
are encoded as their vertex/edge incidence graph with the two kinds of
vertices in separate colour classes, which captures loops and parallel edges
exactly.  ``are_isomorphic`` deliberately takes a different route (VF2 from
networkx after cheap invariant checks) so the two can be cross-checked.
"""

import pynauty

from .graph import Graph


def _nauty_graph(g):
    index = {v: i for i, v in enumerate(g.vertices)}
    if g.is_simple:
        adj = {i: [] for i in range(g.n)}
        for u, v in g.edges:
            adj[index[u]].append(index[v])
        return pynauty.Graph(g.n, adjacency_dict=adj), index
    n = g.n
    adj = {i: [] for i in range(n + g.m)}
    for k, (u, v) in enumerate(g.edges):
        adj[n + k].append(index[u])
        if v != u:
            adj[n + k].append(index[v])
    colouring = [set(range(n)), set(range(n, n + g.m))]
    return pynauty.Graph(n + g.m, adjacency_dict=adj, vertex_coloring=colouring), index


def canonical_form(g):
    """Byte string equal for two graphs iff they are isomorphic."""
    if g.n == 0:
        return b"S\x00\x00"
    ng, _ = _nauty_graph(g)
    head = g.n.to_bytes(2, "big")
    if g.is_simple:
        return b"S" + head + pynauty.certificate(ng)
    return b"M" + head + g.m.to_bytes(2, "big") + pynauty.certificate(ng)


def canonical_order(g):
    """Vertices of ``g`` listed in canonical order (isomorphic graphs align)."""
    if g.n == 0:
        return []
    ng, _ = _nauty_graph(g)
    lab = pynauty.canon_label(ng)
    verts = g.vertices
    return [verts[i] for i in lab if i < g.n]


def canonical_graph(g):
    """Isomorphic copy of ``g`` on ``range(n)`` in canonical vertex order."""
    order = canonical_order(g)
    return g.relabel({v: i for i, v in enumerate(order)})


def automorphism_orbits(g):
    """Orbit id per vertex under the automorphism group of a simple graph."""
    ng, _ = _nauty_graph(g)
    orbits = pynauty.autgrp(ng)[3]
    return {v: orbits[i] for i, v in enumerate(g.vertices) if i < g.n}


def _invariants(g):
    return (g.n, g.m, g.is_simple, tuple(sorted(g.degree(v) for v in g.vertices)))


def are_isomorphic(g, h):
    if _invariants(g) != _invariants(h):
        return False
    import networkx as nx

    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def dedupe(graphs):
    """Keep the first graph of every isomorphism class, preserving order."""
    seen = set()
    out = []
    for g in graphs:
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


__all__ = [
    "Graph",
    "are_isomorphic",
    "automorphism_orbits",
    "canonical_form",
    "canonical_graph",
    "canonical_order",
    "dedupe",
]
