"""Immutable undirected multigraph used by every other module.

Vertices are small integers (not necessarily contiguous).  Edges are stored
as sorted pairs ``(u, v)`` with ``u <= v``; a repeated pair is a parallel
edge and ``(v, v)`` is a loop.  A loop contributes two to the degree of its
vertex.
"""

from collections import Counter

from .errors import DomainError


def norm_edge(u, v):
    return (u, v) if u <= v else (v, u)


class Graph:
    __slots__ = ("_vertices", "_edges", "_adj", "_hash", "_vset")

    def __init__(self, vertices=(), edges=()):
        edges = tuple(sorted(norm_edge(int(u), int(v)) for u, v in edges))
        vset = set(int(v) for v in vertices)
        for u, v in edges:
            if u not in vset or v not in vset:
                raise DomainError(f"edge {(u, v)} has an endpoint outside the vertex set")
        self._vertices = tuple(sorted(vset))
        self._vset = frozenset(vset)
        self._edges = edges
        adj = {v: [] for v in self._vertices}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._hash = None

    @classmethod
    def from_edges(cls, edges, n=None):
        """Build a graph on ``range(n)`` (or on the edge endpoints when n is None)."""
        edges = list(edges)
        if n is None:
            vertices = {x for e in edges for x in e}
        else:
            vertices = range(n)
        return cls(vertices, edges)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return self._edges

    @property
    def n(self):
        return len(self._vertices)

    @property
    def m(self):
        return len(self._edges)

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._vset

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, edges={list(self._edges)})"

    def neighbors(self, v):
        """Neighbours of ``v`` with multiplicity (a loop lists ``v`` twice)."""
        return self._adj[v]

    def distinct_neighbors(self, v):
        return sorted(set(self._adj[v]))

    def degree(self, v):
        return len(self._adj[v])

    def degrees(self):
        return {v: len(ns) for v, ns in self._adj.items()}

    def max_degree(self):
        return max((len(ns) for ns in self._adj.values()), default=0)

    def min_degree(self):
        return min((len(ns) for ns in self._adj.values()), default=0)

    def multiplicity(self, u, v):
        if u not in self._vset:
            return 0
        count = self._adj[u].count(v)
        return count // 2 if u == v else count

    def has_edge(self, u, v):
        return u in self._vset and v in self._adj[u]

    def edge_counter(self):
        return Counter(self._edges)

    @property
    def is_simple(self):
        prev = None
        for e in self._edges:
            if e[0] == e[1] or e == prev:
                return False
            prev = e
        return True

    def is_subcubic(self):
        return self.max_degree() <= 3

    def copy_parts(self):
        return list(self._vertices), list(self._edges)

    # -- derived graphs ----------------------------------------------------

    def induced(self, vs):
        keep = set(vs)
        missing = keep - self._vset
        if missing:
            raise DomainError(f"vertices {sorted(missing)} not in graph")
        return Graph(keep, [e for e in self._edges if e[0] in keep and e[1] in keep])

    def remove_vertices(self, vs):
        drop = set(vs)
        return self.induced(v for v in self._vertices if v not in drop)

    def remove_edge(self, u, v):
        """Delete one copy of the edge ``uv``."""
        e = norm_edge(u, v)
        edges = list(self._edges)
        try:
            edges.remove(e)
        except ValueError:
            raise DomainError(f"edge {e} not in graph") from None
        return Graph(self._vertices, edges)

    def add_edges(self, new_edges):
        return Graph(self._vertices, list(self._edges) + [norm_edge(u, v) for u, v in new_edges])

    def add_vertices(self, vs):
        return Graph(set(self._vertices) | set(vs), self._edges)

    def relabel(self, mapping):
        return Graph((mapping[v] for v in self._vertices),
                     ((mapping[u], mapping[v]) for u, v in self._edges))

    def compact(self):
        """Relabel onto ``range(n)`` preserving vertex order; returns (graph, old->new)."""
        mapping = {v: i for i, v in enumerate(self._vertices)}
        return self.relabel(mapping), mapping

    def simple_view(self):
        """Drop loops and collapse parallel edges."""
        return Graph(self._vertices, sorted({e for e in self._edges if e[0] != e[1]}))

    def next_vertex(self):
        return self._vertices[-1] + 1 if self._vertices else 0

    # -- traversal ---------------------------------------------------------

    def components(self):
        """Connected components as sorted vertex tuples, ordered by least vertex."""
        seen = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            seen.add(s)
            stack = [s]
            comp = [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
                        comp.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self):
        if not self._vertices:
            return True
        return len(self.components()) == 1

    def is_acyclic(self):
        if not self.is_simple:
            return False
        return self.m == self.n - len(self.components())

    def to_networkx(self):
        import networkx as nx

        if self.is_simple:
            g = nx.Graph()
        else:
            g = nx.MultiGraph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, g):
        """Import a networkx graph; non-integer node labels are numbered in node order."""
        nodes = list(g.nodes())
        if all(isinstance(v, int) for v in nodes):
            return cls(nodes, g.edges())
        index = {v: i for i, v in enumerate(nodes)}
        return cls(range(len(nodes)), ((index[u], index[v]) for u, v in g.edges()))


def loop_graph(v=0):
    """The one-vertex graph with a single loop."""
    return Graph([v], [(v, v)])


def subdivide_edge(g, e, new_vertex=None):
    """Replace one copy of ``e`` by a path of length two through a new vertex."""
    u, v = e
    if not g.has_edge(u, v):
        raise DomainError(f"edge {(u, v)} not in graph")
    s = g.next_vertex() if new_vertex is None else new_vertex
    if s in g:
        raise DomainError(f"vertex {s} already present")
    edges = list(g.edges)
    edges.remove(norm_edge(u, v))
    edges += [(u, s), (s, v)]
    return Graph(list(g.vertices) + [s], edges)


def circ_with_ids(g, e1, e2, a):
    """Apply the circle operation and report the ids it created.

    Returns ``(graph, (s1, s2, c))`` where ``s1``/``s2`` subdivide ``e1``/``e2``
    and ``c`` is the new vertex joined to ``a``, ``s1`` and ``s2``.  When
    ``e1 == e2`` the edge is subdivided twice, giving the path
    ``e1[0] - s1 - s2 - e1[1]``.
    """
    if a not in g or g.degree(a) != 2:
        raise DomainError(f"vertex {a} must have degree exactly 2")
    if not g.has_edge(*e1) or not g.has_edge(*e2):
        raise DomainError("both edges must belong to the graph")
    base = g.next_vertex()
    s1, s2, c = base, base + 1, base + 2
    edges = list(g.edges)
    x1, y1 = e1
    x2, y2 = e2
    if norm_edge(x1, y1) == norm_edge(x2, y2):
        edges.remove(norm_edge(x1, y1))
        edges += [(x1, s1), (s1, s2), (s2, y1)]
    else:
        edges.remove(norm_edge(x1, y1))
        edges.remove(norm_edge(x2, y2))
        edges += [(x1, s1), (s1, y1), (x2, s2), (s2, y2)]
    edges += [(c, a), (c, s1), (c, s2)]
    return Graph(list(g.vertices) + [s1, s2, c], edges), (s1, s2, c)


def circ_op(g, e1, e2, a):
    """Subdivide ``e1`` and ``e2`` once each and join a new vertex to ``a`` and both."""
    return circ_with_ids(g, e1, e2, a)[0]
