"""Structural predicates: girth, blocks, small edge cuts, short cycles, planarity."""

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError
from .graph import Graph

INF = math.inf


# -- girth -------------------------------------------------------------------

def girth(g):
    """Length of a shortest cycle; ``math.inf`` for forests.

    Loops count as cycles of length 1 and parallel pairs as cycles of length 2.
    """
    if g.n == 0:
        raise DomainError("girth of the empty graph is undefined")
    best = INF
    prev = None
    for e in g.edges:
        if e[0] == e[1]:
            return 1
        if e == prev:
            best = 2
        prev = e
    if best == 2:
        return 2
    adj = {v: g.distinct_neighbors(v) for v in g.vertices}
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, du + dist[w] + 1)
    return best


def shortest_cycle_through_edge(g, u, v, limit=INF):
    """Length of a shortest cycle using edge ``uv`` (simple graphs), or inf."""
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if dist[x] + 1 >= limit:
            break
        for w in g.neighbors(x):
            if x == u and w == v:
                continue
            if w not in dist:
                dist[w] = dist[x] + 1
                if w == v:
                    return dist[w] + 1
                queue.append(w)
    return INF


# -- blocks ------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple          # tuple of frozensets of vertices
    block_edges: tuple     # tuple of edge tuples, parallel to ``blocks``
    cut_vertices: frozenset
    block_kind: tuple      # "trivial" or "nontrivial" per block

    def nontrivial_blocks(self):
        return [b for b, k in zip(self.blocks, self.block_kind) if k == "nontrivial"]

    def end_blocks(self):
        """Indices of blocks containing at most one cut vertex."""
        return [i for i, b in enumerate(self.blocks) if len(b & self.cut_vertices) <= 1]


def _indexed_adjacency(g):
    adj = {v: [] for v in g.vertices}
    for idx, (u, v) in enumerate(g.edges):
        if u != v:
            adj[u].append((v, idx))
            adj[v].append((u, idx))
    return adj


def _biconnected_edge_sets(g):
    """Tarjan's edge-stack algorithm; yields lists of edge indices (loops excluded)."""
    adj = _indexed_adjacency(g)
    disc = {}
    low = {}
    out = []
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        estack = []
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == pe:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append(eid)
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = []
                    while True:
                        eid = estack.pop()
                        comp.append(eid)
                        if eid == pe:
                            break
                    out.append(comp)
    return out


def block_decomposition(g):
    if g.n == 0 or not g.is_connected():
        raise DomainError("block decomposition needs a nonempty connected graph")
    edges = g.edges
    found = []
    for comp in _biconnected_edge_sets(g):
        vs = frozenset(x for eid in comp for x in edges[eid])
        found.append((vs, tuple(sorted(edges[eid] for eid in comp))))
    for e in edges:
        if e[0] == e[1]:
            found.append((frozenset([e[0]]), (e,)))
    if not found:
        found.append((frozenset(g.vertices), ()))
    found.sort(key=lambda item: (sorted(item[0]), item[1]))
    count = {}
    for vs, _ in found:
        for v in vs:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c > 1)
    kinds = tuple(
        "trivial" if (len(vs) == 1 and not es) or (len(vs) == 2 and len(es) == 1) else "nontrivial"
        for vs, es in found
    )
    return BlockDecomposition(
        blocks=tuple(vs for vs, _ in found),
        block_edges=tuple(es for _, es in found),
        cut_vertices=cuts,
        block_kind=kinds,
    )


def cut_vertices(g):
    return block_decomposition(g).cut_vertices


def is_two_connected(g):
    """At least three vertices, connected, and no cut vertex."""
    if g.n < 3 or not g.is_connected():
        return False
    return not block_decomposition(g).cut_vertices


def blocks_as_graphs(g):
    dec = block_decomposition(g)
    return [Graph(vs, es) for vs, es in zip(dec.blocks, dec.block_edges)]


# -- bridges and small edge cuts ---------------------------------------------

def bridges(g, skip=None):
    """Indices (into ``g.edges``) of cut edges, optionally ignoring edge ``skip``."""
    adj = {v: [] for v in g.vertices}
    for idx, (u, v) in enumerate(g.edges):
        if idx == skip or u == v:
            continue
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    disc = {}
    low = {}
    out = []
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == pe:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    out.append(pe)
    return out


@dataclass(frozen=True)
class EdgeCut:
    side_a: frozenset
    side_b: frozenset
    crossing_edges: tuple

    @property
    def order(self):
        return len(self.crossing_edges)

    def ends(self, side):
        """Ends of the crossing edges lying in ``side`` (one entry per edge)."""
        return [u if u in side else v for u, v in self.crossing_edges]


def _components_without(g, removed):
    adj = {v: [] for v in g.vertices}
    for idx, (u, v) in enumerate(g.edges):
        if idx in removed or u == v:
            continue
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def edge_cuts_up_to_order2(g):
    """Every vertex bipartition crossed by at most two edges.

    Each unordered partition is reported once, with the side holding the
    least vertex id as ``side_a``; results are sorted for determinism.
    """
    if g.n == 0 or not g.is_connected():
        raise DomainError("edge cuts are enumerated for connected graphs only")
    edges = g.edges
    candidates = {frozenset([b]) for b in bridges(g)}
    for f in range(len(edges)):
        if edges[f][0] == edges[f][1]:
            continue
        for e in bridges(g, skip=f):
            candidates.add(frozenset([e, f]))
    least = g.vertices[0]
    found = {}
    for removed in candidates:
        comps = _components_without(g, removed)
        if len(comps) < 2:
            continue
        rest = comps[1:]
        for r in range(0, len(rest) + 1):
            for chosen in combinations(rest, r):
                side = comps[0].union(*chosen) if chosen else comps[0]
                if len(side) == g.n:
                    continue
                other = frozenset(g.vertices) - side
                side_a, side_b = (side, other) if least in side else (other, side)
                if side_a in found:
                    continue
                crossing = tuple(e for e in edges if (e[0] in side_a) != (e[1] in side_a))
                if len(crossing) <= 2:
                    found[side_a] = EdgeCut(side_a, side_b, crossing)
    return sorted(found.values(), key=lambda c: (c.order, sorted(c.side_a), sorted(c.side_b)))


def is_internally_3ec(g):
    """2-edge-connected, and every order-2 cut has a side with one vertex."""
    if g.n == 0 or not g.is_connected():
        return False
    if g.n == 1:
        return True
    for cut in edge_cuts_up_to_order2(g):
        if cut.order < 2:
            return False
        if len(cut.side_a) > 1 and len(cut.side_b) > 1:
            return False
    return True


# -- short cycles ------------------------------------------------------------

def short_cycles(g, max_len=4):
    """All cycles of length <= max_len (max 4) as vertex tuples in cyclic order.

    Loops give 1-tuples and parallel pairs 2-tuples.  Each cycle is listed once.
    """
    out = []
    counter = g.edge_counter()
    for (u, v), c in sorted(counter.items()):
        if u == v:
            out.append((u,))
        elif c >= 2 and max_len >= 2:
            out.append((u, v))
    nbrs = {v: set(g.neighbors(v)) - {v} for v in g.vertices}
    if max_len >= 3:
        for u in g.vertices:
            for v in nbrs[u]:
                if v <= u:
                    continue
                for w in nbrs[u] & nbrs[v]:
                    if w > v:
                        out.append((u, v, w))
    if max_len >= 4:
        seen = set()
        for u in g.vertices:
            for w in g.vertices:
                if w <= u:
                    continue
                common = sorted(nbrs[u] & nbrs[w])
                for x, y in combinations(common, 2):
                    key = frozenset((u, w, x, y))
                    cyc = (u, x, w, y)
                    edges_key = (key, frozenset([frozenset((u, x)), frozenset((x, w)),
                                                 frozenset((w, y)), frozenset((y, u))]))
                    if edges_key in seen:
                        continue
                    seen.add(edges_key)
                    out.append(cyc)
    return out


def two_disjoint_short_cycles(g, max_len=4):
    """A pair of vertex-disjoint cycles of length < 5, or None."""
    cycles = short_cycles(g, max_len)
    sets = [frozenset(c) for c in cycles]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if not (sets[i] & sets[j]):
                return cycles[i], cycles[j]
    return None


def has_two_disjoint_short_cycles(g):
    return two_disjoint_short_cycles(g) is not None


# -- planarity ---------------------------------------------------------------

def is_planar(g):
    import networkx as nx

    return nx.check_planarity(g.simple_view().to_networkx())[0]
