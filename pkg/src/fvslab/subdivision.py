"""Search for an induced subdivision of a pattern graph.

The pattern is reduced to its branch vertices (degree other than two) joined
by chains of degree-two vertices; pure cycle components become cycle tasks.
Branch vertices are placed one at a time and every chain whose ends are both
placed is immediately routed as an induced path of at least the chain's
length.  Inducedness is enforced incrementally: a vertex joining the witness
may only see the witness vertices it is meant to be adjacent to.
"""

from itertools import combinations
from math import comb

from .errors import DomainError
from .graph import Graph
from .iso import canonical_form

SUBSET_BUDGET = 200_000


def _reduce_pattern(h):
    """Branch vertices, chains (p, q, length) between them, and cycle lengths."""
    deg = h.degrees()
    branch = [v for v in h.vertices if deg[v] != 2]
    branch_set = set(branch)
    chains = []
    seen_edges = set()
    on_chain = set()
    for b in branch:
        for first in h.neighbors(b):
            if (b, first) in seen_edges:
                continue
            prev, cur, length = b, first, 1
            seen_edges.add((b, first))
            while cur not in branch_set:
                on_chain.add(cur)
                nxt = next(x for x in h.neighbors(cur) if x != prev)
                seen_edges.add((cur, nxt))
                prev, cur = cur, nxt
                length += 1
            seen_edges.add((cur, prev))
            chains.append((b, cur, length))
    cycles = []
    rest = set(h.vertices) - branch_set - on_chain
    while rest:
        s = min(rest)
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for w in h.neighbors(x):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        rest -= comp
        cycles.append(len(comp))
    return branch, chains, cycles


def _order_branch(branch, chains, h):
    """BFS order over branch vertices plus the BFS parent of each (None for roots)."""
    adj = {b: set() for b in branch}
    for p, q, _ in chains:
        adj[p].add(q)
        adj[q].add(p)
    order = []
    parent = {}
    remaining = sorted(branch, key=lambda b: (-h.degree(b), b))
    for start in remaining:
        if start in parent:
            continue
        parent[start] = None
        queue = [start]
        while queue:
            b = queue.pop(0)
            order.append(b)
            for w in sorted(adj[b], key=lambda x: (-h.degree(x), x)):
                if w not in parent:
                    parent[w] = b
                    queue.append(w)
    return order, parent


class _Search:
    def __init__(self, g, h):
        self.g = g
        self.nbr = {v: set(g.neighbors(v)) for v in g.vertices}
        self.deg = g.degrees()
        branch, chains, cycles = _reduce_pattern(h)
        self.order, self.parent = _order_branch(branch, chains, h)
        self.hdeg = {b: h.degree(b) for b in branch}
        pos = {b: i for i, b in enumerate(self.order)}
        # chains are routed right after their later endpoint is placed
        self.routes_of = {b: [] for b in branch}
        for p, q, length in chains:
            later = p if pos[p] >= pos[q] else q
            other = q if later == p else p
            self.routes_of[later].append((other, later, length))
        self.cycles = sorted(cycles, reverse=True)
        self.phi = {}
        self.W = set()

    def run(self):
        if self._place(0):
            return frozenset(self.W)
        return None

    def _place(self, k):
        if k == len(self.order):
            return self._cycles(0)
        b = self.order[k]
        chains = self.routes_of[b]
        parent = self.parent[b]
        if parent is None:
            for x in self.g.vertices:
                if x not in self.W and self.deg[x] >= self.hdeg[b]:
                    if self._settle(b, x, chains, None, k):
                        return True
            return False
        # the image of b is the far end of an induced path grown from its parent
        pidx = min((i for i, c in enumerate(chains) if c[0] == parent),
                   key=lambda i: chains[i][2])
        return self._grow(self.phi[parent], 0, chains[pidx][2], b, chains, pidx, k)

    def _grow(self, prev, used_edges, length, b, chains, pidx, k):
        for y in sorted(self.nbr[prev]):
            if y in self.W:
                continue
            touching = self.nbr[y] & self.W
            if used_edges + 1 >= length and self.deg[y] >= self.hdeg[b]:
                if self._settle(b, y, chains, pidx, k, prev):
                    return True
            if touching == {prev}:
                self.W.add(y)
                if self._grow(y, used_edges + 1, length, b, chains, pidx, k):
                    return True
                self.W.discard(y)
        return False

    def _settle(self, b, x, chains, pidx, k, via=None):
        """Fix phi(b) = x, then route b's remaining chains."""
        touching = self.nbr[x] & self.W
        if via is not None:
            touching = touching - {via}
        # other placed partners may touch x only through a length-one chain
        direct = {self.phi[p]: i for i, (p, q, length) in enumerate(chains)
                  if length == 1 and p != q and i != pidx}
        if not touching <= direct.keys():
            return False
        used = {direct[w] for w in touching}
        if pidx is not None:
            used.add(pidx)
        pending = [c for i, c in enumerate(chains) if i not in used]
        self.phi[b] = x
        self.W.add(x)
        if self._route_all(pending, 0, k):
            return True
        self.W.discard(x)
        del self.phi[b]
        return False

    def _route_all(self, pending, idx, k):
        if idx == len(pending):
            return self._place(k + 1)
        p, q, length = pending[idx]
        start, end = self.phi[p], self.phi[q]
        return self._extend(start, end, [], length, pending, idx, k)

    def _extend(self, prev, end, path, length, pending, idx, k):
        for x in sorted(self.nbr[prev]):
            if x in self.W:
                continue
            seen = self.nbr[x] & self.W
            if not seen <= {prev, end}:
                continue
            internal = len(path) + 1
            # on a loop chain the first vertex touches the shared end as its predecessor
            closes = end in seen and not (end == prev and internal == 1)
            if closes and internal + 1 < length:
                continue
            self.W.add(x)
            path.append(x)
            if closes:
                ok = self._route_all(pending, idx + 1, k)
            else:
                ok = self._extend(x, end, path, length, pending, idx, k)
            if ok:
                return True
            path.pop()
            self.W.discard(x)
        return False

    def _cycles(self, c):
        if c == len(self.cycles):
            return True
        length = self.cycles[c]
        for s in self.g.vertices:
            if s in self.W or self.nbr[s] & self.W:
                continue
            self.W.add(s)
            if self._cycle_extend(s, s, [s], length, c):
                return True
            self.W.discard(s)
        return False

    def _cycle_extend(self, s, prev, path, length, c):
        for x in sorted(self.nbr[prev]):
            if x in self.W or x < s:
                continue
            seen = self.nbr[x] & self.W
            if not seen <= {prev, s}:
                continue
            closes = s in seen and len(path) >= 2
            if closes and len(path) + 1 < length:
                continue
            self.W.add(x)
            path.append(x)
            if closes:
                ok = self._cycles(c + 1)
            else:
                ok = self._cycle_extend(s, x, path, length, c)
            if ok:
                return True
            path.pop()
            self.W.discard(x)
        return False


def _cycle_rank(g):
    return g.m - g.n + len(g.components())


def _reduction(g):
    """Multigraph on the branch vertices with one edge per chain."""
    branch, chains, _ = _reduce_pattern(g)
    return Graph(branch, [(p, q) for p, q, _ in chains])


def _by_removal(g, h):
    """Scan small removal sets R; g - R must reduce to the same multigraph as h.

    Used when h is connected with all degrees in {2, 3} and at least one branch
    vertex, so a witness induces exactly that degree profile.
    """
    verts = g.vertices
    n = g.n
    index = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for u, v in g.edges:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]
    deg = [bin(x).count("1") for x in nbr]
    rank_h = h.m - h.n + 1
    branch_h = sum(1 for d in h.degrees().values() if d == 3)
    key_h = canonical_form(_reduction(h))
    for k in range(n - h.n + 1):
        for removed in combinations(range(n), k):
            rmask = 0
            for i in removed:
                rmask |= 1 << i
            inner = sum(bin(nbr[i] & rmask).count("1") for i in removed) // 2
            lost = sum(deg[i] for i in removed) - inner
            if (g.m - lost) - (n - k) + 1 != rank_h:
                continue
            threes = 0
            ok = True
            for i in range(n):
                if rmask >> i & 1:
                    continue
                d = deg[i] - bin(nbr[i] & rmask).count("1")
                if d < 2 or d > 3:
                    ok = False
                    break
                threes += d == 3
            if not ok or threes != branch_h:
                continue
            w = g.remove_vertices(verts[i] for i in removed)
            if not w.is_connected() or canonical_form(_reduction(w)) != key_h:
                continue
            # chain lengths may still fall short; settle it on the small graph
            if _Search(w, h).run() is not None:
                return frozenset(w.vertices)
    return None


def contains_induced_subdivision(g, h):
    """Vertex set W with g[W] a subdivision of h, or None."""
    if not g.is_simple or not h.is_simple:
        raise DomainError("induced subdivision search needs simple graphs")
    if h.n == 0:
        return frozenset()
    if h.n > g.n or _cycle_rank(h) > _cycle_rank(g):
        return None
    need = sorted((d for d in h.degrees().values() if d >= 3), reverse=True)
    have = sorted((d for d in g.degrees().values() if d >= 3), reverse=True)
    if len(need) > len(have) or any(a < b for a, b in zip(have, need)):
        return None
    hdeg = set(h.degrees().values())
    if hdeg == {2, 3} or hdeg == {3}:
        if h.is_connected():
            subsets = sum(comb(g.n, k) for k in range(g.n - h.n + 1))
            if subsets <= SUBSET_BUDGET:
                return _by_removal(g, h)
    return _Search(g, h).run()
