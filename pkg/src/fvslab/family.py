"""The families F(i, j), their error terms, and feedback sets for their members.

F(1, 0) holds the one-vertex loop graph.  F(i, j) is closed under two moves:
subdividing an edge of a member of F(i-1, j), and the circle operation
applied to a member of F(i, j-1).  Members have ``i + 3j`` vertices,
``i + 5j`` edges and ``i - j`` vertices of degree two, so the cell of a graph
is fixed by its size.

Every member carries a *derivation*: the explicit sequence of moves, with
vertex ids, that rebuilds it from a loop.  Feedback vertex sets for members
are read off the derivation by pushing a deleted edge backwards through the
moves.
"""

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import pynauty

from .errors import DomainError, IntegrityError, ResourceError
from .graph import Graph, norm_edge
from .iso import canonical_form, canonical_graph
from .structure import block_decomposition, bridges, girth, is_two_connected

DEFAULT_CAP = 20


@dataclass(frozen=True)
class FamilySignature:
    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or not 0 <= self.j <= self.i:
            raise DomainError(f"no family F({self.i},{self.j})")

    @property
    def epsilon(self):
        return Fraction(max(5 - self.i, 0), 7)

    @property
    def n(self):
        return self.i + 3 * self.j

    @property
    def m(self):
        return self.i + 5 * self.j


def signature_from_counts(n, m):
    """The only cell a graph with n vertices and m edges could belong to."""
    if (m - n) % 2:
        return None
    j = (m - n) // 2
    i = n - 3 * j
    if i < 1 or j < 0 or j > i:
        return None
    return FamilySignature(i, j)


# -- derivations -------------------------------------------------------------

@dataclass(frozen=True)
class Subdivide:
    edge: tuple
    new: int


@dataclass(frozen=True)
class Circ:
    e1: tuple        # oriented: when e1 == e2 the path is e1[0]-s1-s2-e1[1]
    e2: tuple
    a: int
    s1: int
    s2: int
    c: int

    @property
    def same_edge(self):
        return norm_edge(*self.e1) == norm_edge(*self.e2)


@dataclass(frozen=True)
class Derivation:
    base: int
    steps: tuple = ()

    def replay(self):
        g = Graph([self.base], [(self.base, self.base)])
        for step in self.steps:
            g = apply_step(g, step)
        return g

    def to_json(self):
        out = []
        for s in self.steps:
            if isinstance(s, Subdivide):
                out.append({"op": "subdivide", "edge": list(s.edge), "new": s.new})
            else:
                out.append({"op": "circ", "e1": list(s.e1), "e2": list(s.e2), "a": s.a,
                            "s1": s.s1, "s2": s.s2, "c": s.c})
        return {"base": self.base, "steps": out}


def apply_step(g, step):
    return Graph(*_step_edges(g, step))


def _step_edges(g, step):
    """Vertex and edge lists after ``step``, without building a Graph."""
    if isinstance(step, Subdivide):
        p, q = step.edge
        edges = list(g.edges)
        edges.remove(norm_edge(p, q))
        edges += [(p, step.new), (step.new, q)]
        return list(g.vertices) + [step.new], edges
    x1, y1 = step.e1
    x2, y2 = step.e2
    edges = list(g.edges)
    edges.remove(norm_edge(x1, y1))
    if step.same_edge:
        edges += [(x1, step.s1), (step.s1, step.s2), (step.s2, y1)]
    else:
        edges.remove(norm_edge(x2, y2))
        edges += [(x1, step.s1), (step.s1, y1), (x2, step.s2), (step.s2, y2)]
    edges += [(step.c, step.a), (step.c, step.s1), (step.c, step.s2)]
    return list(g.vertices) + [step.s1, step.s2, step.c], edges


def _edge_list_key(verts, edges):
    """canonical_form of a simple graph given as lists; None for multigraphs."""
    index = {v: k for k, v in enumerate(verts)}
    adj = {k: [] for k in range(len(verts))}
    seen = set()
    for u, v in edges:
        a, b = index[u], index[v]
        if a == b or (a, b) in seen or (b, a) in seen:
            return None
        seen.add((a, b))
        adj[a].append(b)
    ng = pynauty.Graph(len(verts), adjacency_dict=adj)
    return b"S" + len(verts).to_bytes(2, "big") + pynauty.certificate(ng)


@dataclass(frozen=True)
class FamilyMember:
    graph: Graph
    signature: FamilySignature
    derivation: Derivation = field(compare=False)

    @property
    def degree2_count(self):
        return sum(1 for v in self.graph.vertices if self.graph.degree(v) == 2)


# -- forward generation --------------------------------------------------------

_lock = threading.Lock()
_cells = {}          # (i, j) -> tuple of FamilyMember
_membership = {}     # canonical form -> bool


def _edge_classes(g):
    return sorted(set(g.edges))


def _children(member, move):
    """Steps one move away from ``member``: 'subdivide' or 'circ'."""
    g = member.graph
    if move == "subdivide":
        s = g.next_vertex()
        for e in _edge_classes(g):
            yield Subdivide(e, s)
        return
    twos = [v for v in g.vertices if g.degree(v) == 2]
    base = g.next_vertex()
    for e1, e2 in combinations_with_replacement(_edge_classes(g), 2):
        for a in twos:
            yield Circ(e1, e2, a, base, base + 1, base + 2)


def generate_family(i, j, cap=DEFAULT_CAP):
    """All members of F(i, j), one per isomorphism class, in deterministic order."""
    if i < 1 or j < 0 or j > i:
        return ()
    if cap is not None and i + 3 * j > cap:
        raise ResourceError(f"F({i},{j}) has {i + 3 * j} vertices, above the cap of {cap}")
    with _lock:
        cached = _cells.get((i, j))
    if cached is not None:
        return cached
    if (i, j) == (1, 0):
        members = (FamilyMember(Graph([0], [(0, 0)]), FamilySignature(1, 0), Derivation(0)),)
    else:
        members = []
        seen = set()
        sources = []
        if j <= i - 1:
            sources += [(m, "subdivide") for m in generate_family(i - 1, j, cap)]
        if j >= 1:
            sources += [(m, "circ") for m in generate_family(i, j - 1, cap)]
        target = FamilySignature(i, j)
        for src, move in sources:
            for step in _children(src, move):
                verts, edges = _step_edges(src.graph, step)
                key = _edge_list_key(verts, edges)
                if key is None:
                    key = canonical_form(Graph(verts, edges))
                if key in seen:
                    continue
                seen.add(key)
                members.append(FamilyMember(Graph(verts, edges), target,
                                            Derivation(src.derivation.base, src.derivation.steps + (step,))))
        members = tuple(members)
    with _lock:
        _cells.setdefault((i, j), members)
        for mem in members:
            _membership[canonical_form(mem.graph)] = True
        return _cells[(i, j)]


# -- membership by reverse search --------------------------------------------

def _suppress(g, s):
    p, q = g.neighbors(s)
    return g.remove_vertices([s]).add_edges([(p, q)]), (p, q)


def _undo_moves(g, sig):
    """Yield (smaller graph, move) pairs whose move rebuilds ``g``."""
    degs = g.degrees()
    if sig.i >= 2 and sig.j <= sig.i - 1:
        for s in g.vertices:
            if degs[s] == 2 and s not in g.neighbors(s):
                h, (p, q) = _suppress(g, s)
                yield h, Subdivide((p, q), s)
    if sig.j >= 1:
        for c in g.vertices:
            nb = g.neighbors(c)
            if degs[c] != 3 or len(set(nb)) != 3 or any(degs[x] != 3 for x in nb):
                continue
            for a in nb:
                s1, s2 = sorted(x for x in nb if x != a)
                h0 = g.remove_vertices([c])
                if h0.multiplicity(s1, s2) > 1:
                    continue
                if h0.has_edge(s1, s2):
                    x1 = next(x for x in h0.neighbors(s1) if x != s2)
                    y1 = next(x for x in h0.neighbors(s2) if x != s1)
                    if x1 in (s1, s2) or y1 in (s1, s2):
                        continue
                    h = h0.remove_vertices([s1, s2]).add_edges([(x1, y1)])
                    yield h, Circ((x1, y1), (x1, y1), a, s1, s2, c)
                else:
                    if s1 in h0.neighbors(s1) or s2 in h0.neighbors(s2):
                        continue
                    x1, y1 = h0.neighbors(s1)
                    x2, y2 = h0.neighbors(s2)
                    h = h0.remove_vertices([s1, s2]).add_edges([(x1, y1), (x2, y2)])
                    yield h, Circ((x1, y1), (x2, y2), a, s1, s2, c)


def _plausible(g, sig):
    if g.n == 0 or not g.is_connected():
        return False
    degs = g.degrees()
    if any(d not in (2, 3) for d in degs.values()):
        return sig == FamilySignature(1, 0) and g.n == 1 and g.m == 1
    if sum(1 for d in degs.values() if d == 2) != sig.i - sig.j:
        return False
    return not bridges(g)


def _is_member(g):
    sig = signature_from_counts(g.n, g.m)
    if sig is None:
        return False
    key = canonical_form(g)
    with _lock:
        known = _membership.get(key)
    if known is not None:
        return known
    if sig == FamilySignature(1, 0):
        result = g.n == 1 and g.m == 1
    elif not _plausible(g, sig):
        result = False
    else:
        result = any(_is_member(h) for h, _ in _undo_moves(g, sig))
    with _lock:
        _membership[key] = result
    return result


def find_member(g, cap=DEFAULT_CAP):
    """A :class:`FamilyMember` wrapping ``g`` itself (same vertex ids), or None."""
    sig = signature_from_counts(g.n, g.m)
    if sig is None:
        return None
    if cap is not None and g.n > cap:
        raise ResourceError(f"membership search on {g.n} vertices exceeds the cap of {cap}")
    if not _is_member(g):
        return None
    steps = []
    cur = g
    cur_sig = sig
    while cur_sig != FamilySignature(1, 0):
        for h, step in _undo_moves(cur, cur_sig):
            if _is_member(h):
                steps.append(step)
                cur = h
                cur_sig = signature_from_counts(h.n, h.m)
                break
        else:
            raise IntegrityError("membership cache disagrees with reverse search")
    derivation = Derivation(cur.vertices[0], tuple(reversed(steps)))
    if derivation.replay() != g:
        raise IntegrityError("derivation does not rebuild the graph")
    return FamilyMember(g, sig, derivation)


def family_membership(g, cap=DEFAULT_CAP):
    """The (i, j) with g isomorphic to a member of F(i, j), or None."""
    sig = signature_from_counts(g.n, g.m)
    if sig is None:
        return None
    if cap is not None and g.n > cap:
        raise ResourceError(f"membership test on {g.n} vertices exceeds the cap of {cap}")
    return sig if _is_member(g) else None


# -- error terms ---------------------------------------------------------------

def _epsilon_unchecked(g):
    sig = signature_from_counts(g.n, g.m)
    if sig is None or sig.i >= 5:
        return Fraction(0)
    return sig.epsilon if _is_member(g) else Fraction(0)


def epsilon_of(g):
    """max((5 - i)/7, 0) when g is in F(i, j), else 0.

    Defined for 2-connected graphs and for multigraphs on at most two vertices.
    """
    if not (g.n <= 2 and g.is_connected() and g.n > 0) and not is_two_connected(g):
        raise DomainError("epsilon is defined for 2-connected graphs or multigraphs on <= 2 vertices")
    return _epsilon_unchecked(g)


def r_of(g):
    """Sum of epsilon over the blocks of a connected simple graph (or epsilon of a member)."""
    if g.n == 0 or not g.is_connected():
        raise DomainError("r is defined for connected graphs only")
    if not g.is_simple:
        if not _is_member(g):
            raise DomainError("r is defined for simple graphs and family members only")
        return _epsilon_unchecked(g)
    dec = block_decomposition(g)
    total = Fraction(0)
    for vs, es, kind in zip(dec.blocks, dec.block_edges, dec.block_kind):
        if kind == "nontrivial":
            total += _epsilon_unchecked(Graph(vs, es))
    return total


def r_numerator(g):
    """7 * r(g) as an int."""
    r = r_of(g)
    return int(r * 7)


# -- the forbidden family ----------------------------------------------------

_forbidden = None


def forbidden_family():
    """Girth->=5 members of F(4,2) and F(4,3), plus members of F(3,2) and F(3,3)
    having an edge whose deletion leaves girth >= 5.  Canonically labelled."""
    global _forbidden
    with _lock:
        if _forbidden is not None:
            return _forbidden
    found = []
    for i, j in ((4, 2), (4, 3)):
        found += [m.graph for m in generate_family(i, j) if girth(m.graph) >= 5]
    for i, j in ((3, 2), (3, 3)):
        for m in generate_family(i, j):
            g = m.graph
            if any(girth(g.remove_edge(*e)) >= 5 for e in set(g.edges)):
                found.append(g)
    out = []
    seen = set()
    for g in found:
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            out.append(canonical_graph(g))
    with _lock:
        if _forbidden is None:
            _forbidden = tuple(out)
        return _forbidden


# -- feedback sets for members -------------------------------------------------

def _pull_back(step, e):
    """Map an edge of the graph after ``step`` to an edge before it, plus extra vertices."""
    if isinstance(step, Subdivide):
        p, q = step.edge
        if e in (norm_edge(p, step.new), norm_edge(step.new, q)):
            return norm_edge(p, q), ()
        return e, ()
    x1, y1 = step.e1
    x2, y2 = step.e2
    e1, e2 = norm_edge(x1, y1), norm_edge(x2, y2)
    if e == norm_edge(step.c, step.s1):
        return e2, (step.s2,)
    if e in (norm_edge(step.c, step.s2), norm_edge(step.c, step.a)):
        return e1, (step.s1,)
    if step.same_edge:
        if e in (norm_edge(x1, step.s1), norm_edge(step.s1, step.s2), norm_edge(step.s2, y1)):
            return e1, (step.c,)
        return e, (step.c,)
    if e in (norm_edge(x1, step.s1), norm_edge(step.s1, y1)):
        return e1, (step.c,)
    if e in (norm_edge(x2, step.s2), norm_edge(step.s2, y2)):
        return e2, (step.c,)
    return e, (step.c,)


def _fvs_minus_edge(derivation, e):
    chosen = set()
    e = norm_edge(*e)
    for step in reversed(derivation.steps):
        e, extra = _pull_back(step, e)
        chosen.update(extra)
    return chosen


def family_fvs(member, deleted=None, target=None):
    """Feedback vertex set of ``member.graph`` (minus ``deleted`` when given).

    Sizes: at most (2m - n + 2)/7 + eps - 1 with an edge deleted, at most
    (2m - n + 2)/7 + eps otherwise.  With ``target`` the set contains it.
    """
    if member.derivation is None:
        raise DomainError("member has no derivation")
    if deleted is not None and target is not None:
        raise DomainError("pass either a deleted edge or a target vertex, not both")
    g = member.graph
    sig = member.signature
    limit7 = 2 * g.m - g.n + 2 + max(5 - sig.i, 0)
    if deleted is not None:
        if not g.has_edge(*deleted):
            raise DomainError(f"edge {deleted} not in graph")
        out = _fvs_minus_edge(member.derivation, deleted)
        limit7 -= 7
    else:
        if target is None:
            steps = member.derivation.steps
            circs = [s for s in steps if isinstance(s, Circ)]
            target = circs[-1].c if circs else member.derivation.base
        if target not in g:
            raise DomainError(f"vertex {target} not in graph")
        e = next(edge for edge in g.edges if target in edge)
        out = _fvs_minus_edge(member.derivation, e) | {target}
    if 7 * len(out) > limit7:
        raise IntegrityError(f"family feedback set of size {len(out)} exceeds {limit7}/7")
    return out


def member_of(g, cap=DEFAULT_CAP):
    """Like :func:`find_member` but raises when g is not a member."""
    mem = find_member(g, cap)
    if mem is None:
        raise DomainError("graph is not a member of any F(i, j)")
    return mem
