"""Feedback vertex sets that come with a checkable size bound.

Two solvers share one engine:

* :func:`fvs_subcubic` handles connected subcubic graphs with no two disjoint
  cycles shorter than five and no induced subdivision of a forbidden-family
  member.  Its witness has size at most ``(2m - n + 2)/7 + r(G)``.
* :func:`fvs_planar_girth5` handles connected planar graphs of girth at least
  five with witness size at most ``(2m - n + 2)/7``.  It peels off cut edges,
  high-degree vertices and end-blocks, then hands subcubic pieces over.

Each rule proposes candidate constructions: a set of vertices taken outright
plus smaller pieces solved recursively (or read off a family derivation).
Every piece has a guaranteed bound, so a candidate is attempted only when the
pieces' bounds add up to the target.  The first candidate that yields a
verified feedback vertex set wins; otherwise the next rule is tried.
All bounds are kept as integer numerators over 7.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

import networkx as nx

from .errors import DomainError, IntegrityError
from .exact import is_feedback_vertex_set, min_fvs_exact
from .family import family_fvs, find_member, forbidden_family, r_of
from .graph import Graph, norm_edge
from .iso import canonical_form
from .structure import (
    block_decomposition,
    bridges,
    edge_cuts_up_to_order2,
    girth,
    has_two_disjoint_short_cycles,
    is_planar,
    is_two_connected,
    short_cycles,
)
from .subdivision import contains_induced_subdivision


# -- certificates ---------------------------------------------------------------

@dataclass
class TraceStep:
    rule: str
    construction: str
    removed_vertices: tuple
    removed_edges: tuple
    sub: list = field(default_factory=list)

    def to_json(self):
        return {
            "rule": self.rule,
            "construction": self.construction,
            "removed_vertices": list(self.removed_vertices),
            "removed_edges": [list(e) for e in self.removed_edges],
            "sub": [c.to_json() for c in self.sub],
        }


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)

    def to_json(self):
        return [s.to_json() for s in self.steps]

    def rules(self):
        """Every rule id in the trace tree, depth first."""
        out = []
        for s in self.steps:
            out.append(s.rule)
            for c in s.sub:
                out.extend(c.trace.rules())
        return out


@dataclass
class FvsCertificate:
    witness: frozenset
    bound_numerator: int
    r_value: Fraction
    trace: ReductionTrace
    fallback_used: bool = False
    n: int = 0
    m: int = 0

    @property
    def size(self):
        return len(self.witness)

    @property
    def r_numerator(self):
        return int(self.r_value * 7)

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "steps": self.trace.to_json(),
            "witness": sorted(self.witness),
            "bound_numerator": self.bound_numerator,
            "r_numerator": self.r_numerator,
            "fallback_used": self.fallback_used,
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def verify_certificate(g, c):
    """Witness is a feedback vertex set within the bound, and the error term is right."""
    try:
        if not is_feedback_vertex_set(g, c.witness):
            return False
        if r_of(g) != c.r_value:
            return False
    except DomainError:
        return False
    if c.bound_numerator != 2 * g.m - g.n + 2 + 7 * c.r_value:
        return False
    return 7 * len(c.witness) <= c.bound_numerator


# -- named base cases -------------------------------------------------------------

def _k33():
    return Graph.from_edges([(a, b) for a in range(3) for b in range(3, 6)])


_BASE_KEYS = {}


def _base_key(name):
    if not _BASE_KEYS:
        k33 = _k33()
        _BASE_KEYS["k33"] = canonical_form(k33)
        _BASE_KEYS["k33+"] = canonical_form(k33.remove_edge(0, 3).add_vertices([6]).add_edges([(0, 6), (6, 3)]))
        _BASE_KEYS["dodecahedron"] = canonical_form(Graph.from_networkx(nx.dodecahedral_graph()))
    return _BASE_KEYS[name]


def forbidden_witness(g):
    """An induced subdivision of some forbidden-family member in g, or None.

    Planar graphs are skipped: every forbidden member is non-planar.
    """
    if is_planar(g):
        return None
    for h in forbidden_family():
        w = contains_induced_subdivision(g, h)
        if w is not None:
            return w
    return None


# -- the engine ---------------------------------------------------------------------

class _Piece:
    """A subproblem: 'sub' / 'p5' solve a graph, 'fe' / 'fv' read a family derivation."""

    __slots__ = ("kind", "graph", "member", "arg")

    def __init__(self, kind, graph, member=None, arg=None):
        self.kind = kind
        self.graph = graph
        self.member = member
        self.arg = arg

    def solved_graph(self):
        if self.kind == "fe":
            return self.graph.remove_edge(*self.arg)
        return self.graph


def _acyclic(g):
    return g.is_acyclic()


def _is_path(g):
    return g.is_connected() and g.is_acyclic() and g.max_degree() <= 2


class _Engine:
    def __init__(self, fallback_exact=False, disabled=()):
        self.fallback_exact = fallback_exact
        self.disabled = frozenset(disabled)
        self._sub_cache = {}
        self._p5_cache = {}

    # pieces ------------------------------------------------------------------

    def _sub_pieces(self, h):
        """Pieces for every cyclic component of h, or None when one is not a valid input."""
        out = []
        for comp in h.components():
            c = h.induced(comp)
            if _acyclic(c):
                continue
            if not c.is_simple or c.max_degree() > 3 or has_two_disjoint_short_cycles(c):
                return None
            out.append(_Piece("sub", c))
        return out

    def _p5_pieces(self, h):
        out = []
        for comp in h.components():
            c = h.induced(comp)
            if not _acyclic(c):
                out.append(_Piece("p5", c))
        return out

    @staticmethod
    def _family_bound(member):
        g = member.graph
        return 2 * g.m - g.n + 2 + max(5 - member.signature.i, 0)

    def _bound7(self, piece):
        g = piece.graph
        if piece.kind == "sub":
            return 2 * g.m - g.n + 2 + 7 * r_of(g)
        if piece.kind == "p5":
            return 2 * g.m - g.n + 2
        if piece.kind == "fe":
            return self._family_bound(piece.member) - 7
        return self._family_bound(piece.member)

    def _solve_piece(self, piece):
        if piece.kind == "sub":
            return self.subcubic(piece.graph)
        if piece.kind == "p5":
            return self.planar5(piece.graph)
        if piece.kind == "fe":
            s = family_fvs(piece.member, deleted=piece.arg)
            rule = "family-edge"
        else:
            s = family_fvs(piece.member, target=piece.arg)
            rule = "family-vertex"
        h = piece.solved_graph()
        bound = self._bound7(piece)
        step = TraceStep(rule, f"F({piece.member.signature.i},{piece.member.signature.j})", (), (), [])
        return FvsCertificate(frozenset(s), bound, Fraction(bound - (2 * h.m - h.n + 2), 7),
                              ReductionTrace([step]), False, h.n, h.m)

    # candidates --------------------------------------------------------------

    def _attempt(self, g, target7, rule, construction, extra, pieces):
        if pieces is None:
            return None
        size = g.n + g.m
        for p in pieces:
            h = p.solved_graph()
            if h.n + h.m >= size:
                raise IntegrityError(f"rule {rule} did not shrink the graph")
        bound = 7 * len(extra) + sum(self._bound7(p) for p in pieces)
        if bound > target7:
            return None
        try:
            subs = [self._solve_piece(p) for p in pieces]
        except IntegrityError:
            return None
        witness = set(extra)
        for c in subs:
            witness |= c.witness
        if 7 * len(witness) > target7 or not is_feedback_vertex_set(g, witness):
            return None
        kept_v = set()
        kept_e = []
        for p in pieces:
            h = p.solved_graph()
            kept_v.update(h.vertices)
            kept_e.extend(h.edges)
        left = list(g.edges)
        for e in kept_e:
            if e in left:
                left.remove(e)
        step = TraceStep(rule, construction, tuple(sorted(set(g.vertices) - kept_v)),
                         tuple(left), subs)
        return witness, step, any(c.fallback_used for c in subs)

    def _run(self, g, target7, r_value, candidates):
        for rule, construction, extra, pieces in candidates:
            if rule in self.disabled:
                continue
            got = self._attempt(g, target7, rule, construction, extra, pieces)
            if got is not None:
                witness, step, fb = got
                return FvsCertificate(frozenset(witness), target7, r_value,
                                      ReductionTrace([step]), fb, g.n, g.m)
        return None

    def _fallback(self, g, target7, r_value, why):
        if not self.fallback_exact:
            raise IntegrityError(why)
        res = min_fvs_exact(g)
        step = TraceStep("fallback", "exact", (), (), [])
        return FvsCertificate(res.witness, target7, r_value, ReductionTrace([step]), True, g.n, g.m)

    # subcubic ----------------------------------------------------------------

    def subcubic(self, g):
        cached = self._sub_cache.get(g)
        if cached is not None:
            return cached
        r_value = r_of(g)
        target7 = 2 * g.m - g.n + 2 + int(7 * r_value)
        cert = self._run(g, target7, r_value, self._subcubic_candidates(g))
        if cert is None:
            cert = self._fallback(g, target7, r_value, "no reduction rule produced a certified set")
        self._sub_cache[g] = cert
        return cert

    def _subcubic_candidates(self, g):
        # B0: base cases
        if _acyclic(g):
            yield "B0", "forest", frozenset(), []
            return
        member = find_member(g, cap=None)
        if member is not None:
            yield "B0", self._base_name(g, member), frozenset(family_fvs(member)), []
        key = canonical_form(g)
        if key in (_base_key("k33"), _base_key("k33+")):
            for pair in combinations(g.vertices, 2):
                if is_feedback_vertex_set(g, pair):
                    yield "B0", "k33", frozenset(pair), []
                    break
        if key == _base_key("dodecahedron") and member is not None:
            yield "B0", "dodecahedron", frozenset(family_fvs(member)), []

        # B1: leaves and end-blocks
        leaves = [v for v in g.vertices if g.degree(v) <= 1]
        if leaves:
            v = leaves[0]
            yield "B1", "leaf", frozenset(), self._sub_pieces(g.remove_vertices([v]))
            return
        dec = block_decomposition(g)
        if dec.cut_vertices:
            ends = sorted((sorted(dec.blocks[i]) for i in dec.end_blocks()
                           if dec.block_kind[i] == "nontrivial"))
            for vs in ends:
                pieces = self._sub_pieces(g.induced(vs))
                rest = self._sub_pieces(g.remove_vertices(vs))
                if pieces is not None and rest is not None:
                    yield "B1", "end-block", frozenset(), pieces + rest
            return

        cuts = []
        for cut in edge_cuts_up_to_order2(g):
            cuts.append((cut.side_a, cut.side_b, cut))
            cuts.append((cut.side_b, cut.side_a, cut))

        yield from self._b2(g, cuts)
        yield from self._b3(g, cuts)
        yield from self._b4(g, cuts)
        yield from self._b5(g)
        yield from self._b6(g, cuts)
        yield from self._b7(g)
        yield from self._b8(g)

    @staticmethod
    def _base_name(g, member):
        sig = member.signature
        return f"family F({sig.i},{sig.j})"

    @staticmethod
    def _ends(cut, side):
        """Crossing edges as (end in side, end in other side), in edge order."""
        out = []
        for u, v in cut.crossing_edges:
            out.append((u, v) if u in side else (v, u))
        return out

    def _b2(self, g, cuts):
        for A, B, cut in cuts:
            if len(B) < 2:
                continue
            member = find_member(g.induced(B), cap=None)
            if member is None or member.signature.i > 4:
                continue
            ends_b = [b for b, _ in self._ends(cut, B)]
            for ub in dict.fromkeys(ends_b):
                piece = _Piece("fv", member.graph, member, ub)
                if len(A) == 1:
                    yield "B2", "family side, single vertex", frozenset(), [piece]
                else:
                    rest = self._sub_pieces(g.induced(A))
                    yield "B2", "family side", frozenset(), None if rest is None else [piece] + rest

    def _b3(self, g, cuts):
        for A, B, cut in cuts:
            ga = g.induced(A)
            if len(A) < 3 or not ga.is_connected() or any(ga.degree(v) != 2 for v in A):
                continue
            for a, _ in self._ends(cut, A):
                yield "B3", "cycle side", frozenset([a]), self._sub_pieces(g.induced(B))

    def _splitters(self, g, cuts):
        found = []
        for A, B, cut in cuts:
            if len(A) < 2 or len(B) < 3:
                continue
            if girth(g.induced(A)) < 5 or not is_two_connected(g.induced(B)):
                continue
            found.append((A, B, cut))
        tight = [s for s in found if not any(t[1] < s[1] for t in found)]
        return sorted(tight, key=lambda s: (len(s[1]), sorted(s[1])))

    def _b4(self, g, cuts):
        for A, B, cut in self._splitters(g, cuts):
            ga = g.induced(A)
            if _is_path(ga):
                continue
            gb = g.induced(B)
            sb = self._sub_pieces(gb)
            (a1, b1), (a2, b2) = self._ends(cut, A)
            for ua, ub, va, vb in ((a1, b1, a2, b2), (a2, b2, a1, b1)):
                if not g.has_edge(ua, va):
                    a_plus = ga.add_edges([(ua, va)])
                    rest = self._sub_pieces(a_plus)
                    yield "B4", "side plus edge", frozenset(), None if rest is None or sb is None else rest + sb
                    mem = find_member(a_plus, cap=None)
                    if mem is not None and mem.signature.i <= 4:
                        for w in (ub, vb):
                            other = self._sub_pieces(gb.remove_vertices([w]))
                            if other is not None:
                                yield ("B4", "family side minus edge", frozenset([w]),
                                       [_Piece("fe", a_plus, mem, norm_edge(ua, va))] + other)
                    continue
                if g.degree(ua) == 2 or g.degree(va) == 2:
                    continue
                u1 = next(x for x in g.neighbors(ua) if x in A and x != va)
                core = [x for x in A if x not in (u1, ua, va)]
                if g.degree(u1) == 2:
                    rest = self._sub_pieces(g.induced(core))
                    yield ("B4", "drop short end", frozenset([ua]),
                           None if rest is None or sb is None else rest + sb)
                    continue
                x, y = (w for w in g.neighbors(u1) if w != ua)
                if g.has_edge(x, y) or va in (x, y):
                    continue
                a3 = g.induced(core).add_edges([(x, y)])
                rest = self._sub_pieces(a3)
                yield ("B4", "drop end, join", frozenset([ua]),
                       None if rest is None or sb is None else rest + sb)
                block = self._block_with_edge(a3, x, y)
                if block is None:
                    continue
                mem = find_member(block, cap=None)
                if mem is None or mem.signature.i > 4:
                    continue
                outside = self._sub_pieces(a3.remove_vertices(block.vertices))
                if outside is None:
                    continue
                for w in (ub, vb):
                    other = self._sub_pieces(gb.remove_vertices([w]))
                    if other is not None:
                        yield ("B4", "family block minus edge", frozenset([u1, w]),
                               [_Piece("fe", block, mem, norm_edge(x, y))] + outside + other)

    @staticmethod
    def _block_with_edge(h, x, y):
        comp = next(c for c in h.components() if x in c)
        sub = h.induced(comp)
        dec = block_decomposition(sub)
        for vs, es in zip(dec.blocks, dec.block_edges):
            if norm_edge(x, y) in es and len(vs) >= 3:
                return Graph(vs, es)
        return None

    def _b5(self, g):
        for u in g.vertices:
            if g.degree(u) != 2:
                continue
            x, y = g.neighbors(u)
            if g.has_edge(x, y):
                continue
            h = g.remove_vertices([u]).add_edges([(x, y)])
            yield "B5", "contract", frozenset(), self._sub_pieces(h)

    def _b6(self, g, cuts):
        order = []
        for A, B, cut in cuts:
            if len(A) < 2 or len(B) < 2 or girth(g.induced(A)) < 5:
                continue
            order.append((len(B), sorted(B), A, B, cut))
        order.sort(key=lambda t: (t[0], t[1]))
        for _, _, A, B, cut in order:
            ga = g.induced(A)
            side_a = [] if _acyclic(ga) else self._sub_pieces(ga)
            for w, _ in self._ends(cut, B):
                rest = self._sub_pieces(g.induced(B).remove_vertices([w]))
                yield ("B6", "cut end", frozenset([w]),
                       None if rest is None or side_a is None else side_a + rest)

    def _b7(self, g):
        for tri in short_cycles(g, 3):
            if len(tri) != 3 or any(g.degree(v) != 3 for v in tri):
                continue
            X = set(tri)
            outer = {v: next(w for w in g.neighbors(v) if w not in X) for v in tri}
            if len(set(outer.values())) < 3:
                continue
            ring = [outer[v] for v in tri]
            if sum(1 for p, q in combinations(ring, 2) if g.has_edge(p, q)) > 1:
                continue
            rest = g.remove_vertices(X)
            self._check_removal(rest)
            for a, b, c in permutations(tri):
                a1, b1, c1 = outer[a], outer[b], outer[c]
                if g.has_edge(b1, a1) or g.has_edge(b1, c1):
                    continue
                h = rest.add_edges([(b1, c1)])
                yield "B7", "triangle", frozenset([a]), self._sub_pieces(h)

    @staticmethod
    def _check_removal(rest):
        if not rest.is_connected():
            raise IntegrityError("removing a triangle disconnected the graph")
        dec = block_decomposition(rest)
        if len(dec.nontrivial_blocks()) > 1:
            raise IntegrityError("removing a triangle left two nontrivial blocks")

    def _b8(self, g):
        paths = []
        for b in g.vertices:
            if g.degree(b) != 3:
                continue
            for a, c in combinations(g.distinct_neighbors(b), 2):
                if g.degree(a) == 3 and g.degree(c) == 3:
                    paths.append((a, b, c))
        on_square = [p for p in paths if set(g.neighbors(p[0])) & set(g.neighbors(p[2])) - {p[1]}]
        seen = set()
        for a, b, c in on_square + paths:
            if (a, b, c) in seen:
                continue
            seen.add((a, b, c))
            a1, a2 = (w for w in g.neighbors(a) if w != b)
            c1, c2 = (w for w in g.neighbors(c) if w != b)
            if {a1, a2, c1, c2} & {a, b, c}:
                continue
            if g.has_edge(a1, a2) or g.has_edge(c1, c2) or {a1, a2} == {c1, c2}:
                continue
            h = g.remove_vertices([a, b, c]).add_edges([(a1, a2), (c1, c2)])
            yield "B8", "path of cubic vertices", frozenset([b]), self._sub_pieces(h)

    # planar, girth five ------------------------------------------------------

    def planar5(self, g):
        cached = self._p5_cache.get(g)
        if cached is not None:
            return cached
        target7 = 2 * g.m - g.n + 2
        if g.max_degree() <= 3:
            cert = self.subcubic(g)
        else:
            cert = self._run(g, target7, Fraction(0), self._planar_candidates(g))
            if cert is None:
                cert = self._fallback(g, target7, Fraction(0), "no planar reduction produced a certified set")
        self._p5_cache[g] = cert
        return cert

    def _planar_candidates(self, g):
        cut_edges = bridges(g)
        if cut_edges:
            u, v = g.edges[cut_edges[0]]
            yield "R1", "cut edge", frozenset(), self._p5_pieces(g.remove_edge(u, v))
            return
        for v in g.vertices:
            d = g.degree(v)
            if d >= 5 or (d == 4 and g.remove_vertices([v]).is_connected()):
                yield "R2", "high degree", frozenset([v]), self._p5_pieces(g.remove_vertices([v]))
                return
        dec = block_decomposition(g)
        ends = sorted(sorted(dec.blocks[i]) for i in dec.end_blocks())
        for vs in ends:
            cut = [v for v in vs if v in dec.cut_vertices]
            if len(cut) != 1 or g.degree(cut[0]) != 4:
                continue
            v = cut[0]
            inner = [x for x in vs if x != v]
            v1, v2 = (w for w in g.neighbors(v) if w in vs)
            b_prime = g.induced(inner).add_edges([(v1, v2)])
            outside = g.remove_vertices(inner)
            yield "R3", "end-block suppressed", frozenset(), [_Piece("sub", b_prime), _Piece("p5", outside)]
            mem = find_member(b_prime, cap=None)
            far = self._p5_pieces(g.remove_vertices(vs))
            if mem is not None and mem.signature.i <= 4:
                yield ("R3", "end-block family minus edge", frozenset([v]),
                       [_Piece("fe", b_prime, mem, norm_edge(v1, v2))] + far)
            inner_pieces = self._sub_pieces(g.induced(inner))
            if inner_pieces is not None:
                yield "R3", "end-block minus cut vertex", frozenset([v]), inner_pieces + far


# -- public entry points ------------------------------------------------------------

def check_subcubic_input(g, check_forbidden=True):
    if g.n == 0 or not g.is_connected():
        raise DomainError("input must be a nonempty connected graph")
    if not g.is_simple:
        raise DomainError("input must be simple")
    if g.max_degree() > 3:
        raise DomainError("input must be subcubic")
    # family members are base cases even though some carry two short cycles
    if has_two_disjoint_short_cycles(g) and find_member(g, cap=None) is None:
        raise DomainError("input has two disjoint cycles of length less than five")
    if check_forbidden and forbidden_witness(g) is not None:
        raise DomainError("input contains an induced subdivision of a forbidden-family member")


def fvs_subcubic(g, fallback_exact=False, check_forbidden=True):
    """Certified feedback vertex set of size at most (2m - n + 2)/7 + r(g)."""
    check_subcubic_input(g, check_forbidden)
    return _Engine(fallback_exact).subcubic(g)


def fvs_planar_girth5(g, fallback_exact=False):
    """Certified feedback vertex set of size at most (2m - n + 2)/7."""
    if g.n == 0 or not g.is_connected():
        raise DomainError("input must be a nonempty connected graph")
    if not g.is_simple:
        raise DomainError("input must be simple")
    if girth(g) < 5:
        raise DomainError("input must have girth at least five")
    if not is_planar(g):
        raise DomainError("input must be planar")
    return _Engine(fallback_exact).planar5(g)
