"""Exact minimum feedback vertex sets.

Two independent solvers that serve as oracles for each other:

* :func:`min_fvs_bruteforce` scans vertex subsets by increasing size using a
  numpy table of induced edge counts (graphs up to 20 vertices).
* :func:`min_fvs_exact` is a branch and bound over multigraphs with the usual
  degree reductions and two lower bounds.
"""

import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DomainError, IntegrityError, ResourceError
from .graph import Graph

BRUTE_MAX_N = 20


@dataclass(frozen=True)
class FvsResult:
    size: int
    witness: frozenset
    method: str
    millis: float

    def to_json(self):
        return {"size": self.size, "witness": sorted(self.witness), "method": self.method,
                "millis": round(self.millis, 3)}


def is_feedback_vertex_set(g, s):
    s = set(s)
    if not s <= set(g.vertices):
        raise DomainError(f"vertices {sorted(s - set(g.vertices))} are not in the graph")
    return g.remove_vertices(s).is_acyclic()


# -- brute force ----------------------------------------------------------------

def _non_forest_masks(g):
    """Boolean array over vertex masks: True where the induced subgraph has a cycle."""
    n = g.n
    index = {v: i for i, v in enumerate(g.vertices)}
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    edge_count = np.zeros(size, dtype=np.int32)
    for u, v in g.edges:
        bits = (1 << index[u]) | (1 << index[v])
        edge_count += ((masks & bits) == bits)
    popcount = np.zeros(size, dtype=np.int32)
    for i in range(n):
        popcount += (masks >> i) & 1
    # a graph has a cycle iff some vertex subset spans at least as many edges
    bad = edge_count >= np.maximum(popcount, 1)
    for i in range(n):
        bit = 1 << i
        with_bit = masks[(masks & bit) != 0]
        bad[with_bit] |= bad[with_bit ^ bit]
    return bad


def min_fvs_bruteforce(g, max_n=BRUTE_MAX_N):
    start = time.perf_counter()
    if g.n > max_n:
        raise ResourceError(f"brute force is limited to {max_n} vertices, got {g.n}")
    n = g.n
    verts = g.vertices
    if n == 0:
        return FvsResult(0, frozenset(), "brute_force", 0.0)
    bad = _non_forest_masks(g)
    full = (1 << n) - 1
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            removed = 0
            for i in combo:
                removed |= 1 << i
            if not bad[full ^ removed]:
                witness = frozenset(verts[i] for i in combo)
                return FvsResult(k, witness, "brute_force", (time.perf_counter() - start) * 1000)
    raise AssertionError("unreachable: removing every vertex leaves a forest")


# -- branch and bound -------------------------------------------------------------

class _Timeout(Exception):
    pass


class _Solver:
    def __init__(self, deadline):
        self.deadline = deadline
        self.best = None
        self.nodes = 0

    def check_time(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.perf_counter() > self.deadline:
            raise _Timeout

    # adj maps v to {neighbour: multiplicity}; a loop is adj[v][v]

    @staticmethod
    def _remove(adj, v):
        for w in adj.pop(v):
            if w != v:
                del adj[w][v]

    @staticmethod
    def _deg(adj, v):
        return sum(c * (2 if w == v else 1) for w, c in adj[v].items())

    def reduce(self, adj, kept, chosen):
        """Apply reductions in place; returns False when infeasible."""
        changed = True
        while changed:
            changed = False
            for v in list(adj):
                if v not in adj:
                    continue
                nb = adj[v]
                if v in nb:
                    if v in kept:
                        return False
                    chosen.append(v)
                    self._remove(adj, v)
                    changed = True
                    continue
                d = sum(nb.values())
                if d <= 1:
                    self._remove(adj, v)
                    changed = True
                    continue
                if v in kept:
                    for w, c in list(nb.items()):
                        if c >= 2:
                            if w in kept:
                                return False
                            chosen.append(w)
                            self._remove(adj, w)
                            changed = True
                            break
                    if changed:
                        continue
                    kept_nb = [w for w in nb if w in kept]
                    if kept_nb:
                        # contract v into its kept neighbour w
                        w = kept_nb[0]
                        del nb[w]
                        del adj[w][v]
                        for x, c in nb.items():
                            adj[x][w] = adj[x].get(w, 0) + c
                            adj[w][x] = adj[w].get(x, 0) + c
                            del adj[x][v]
                        del adj[v]
                        kept.discard(v)
                        changed = True
                        continue
                if d == 2 and v not in kept:
                    ws = [w for w, c in nb.items() for _ in range(c)]
                    a, b = ws
                    if a == b and a in kept:
                        chosen.append(v)
                        self._remove(adj, v)
                        changed = True
                        continue
                    if a in kept and b in kept:
                        continue
                    self._remove(adj, v)
                    if a == b:
                        adj[a][a] = adj[a].get(a, 0) + 1
                    else:
                        adj[a][b] = adj[a].get(b, 0) + 1
                        adj[b][a] = adj[b].get(a, 0) + 1
                    changed = True
                    continue
        return True

    @staticmethod
    def _packing_bound(adj):
        """Greedy vertex-disjoint cycles found by repeated BFS."""
        used = set()
        count = 0
        for root in sorted(adj):
            if root in used:
                continue
            # shortest cycle through unused vertices reachable from root
            parent = {root: None}
            q = deque([root])
            found = None
            while q and found is None:
                u = q.popleft()
                for w, c in adj[u].items():
                    if w in used:
                        continue
                    if w == u or (c >= 2):
                        found = (u, w)
                        break
                    if w not in parent:
                        parent[w] = u
                        q.append(w)
                    elif parent[u] != w:
                        found = (u, w)
                        break
            if found is None:
                continue
            u, w = found
            cyc = set()
            x = u
            while x is not None:
                cyc.add(x)
                x = parent[x]
            cyc.add(w)
            x = parent.get(w)
            while x is not None:
                cyc.add(x)
                x = parent[x]
            used |= cyc
            count += 1
        return count

    def _cyclomatic_bound(self, adj, kept):
        m = sum(self._deg(adj, v) for v in adj) // 2
        n = len(adj)
        seen = set()
        comps = 0
        for s in adj:
            if s in seen:
                continue
            comps += 1
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for w in adj[x]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        mu = m - n + comps
        if mu <= 0:
            return 0
        gains = sorted((self._deg(adj, v) - 1 for v in adj if v not in kept), reverse=True)
        total = 0
        k = 0
        for gain in gains:
            if total >= mu:
                break
            total += gain
            k += 1
        return k if total >= mu else len(gains) + 1

    def solve(self, adj, kept, chosen):
        self.check_time()
        if not self.reduce(adj, kept, chosen):
            return
        if self.best is not None and len(chosen) >= len(self.best):
            return
        if not adj:
            self.best = list(chosen)
            return
        lb = max(self._packing_bound(adj), self._cyclomatic_bound(adj, kept))
        if self.best is not None and len(chosen) + lb >= len(self.best):
            return
        free = [v for v in adj if v not in kept]
        if not free:
            return
        v = max(free, key=lambda x: (self._deg(adj, x), -x))
        # take v
        a1 = {x: dict(nb) for x, nb in adj.items()}
        self._remove(a1, v)
        self.solve(a1, set(kept), chosen + [v])
        # keep v
        a2 = {x: dict(nb) for x, nb in adj.items()}
        self.solve(a2, set(kept) | {v}, list(chosen))


def _adjacency(g):
    adj = {v: {} for v in g.vertices}
    for u, v in g.edges:
        if u == v:
            adj[u][u] = adj[u].get(u, 0) + 1
        else:
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
    return adj


def reduce_graph(g):
    """Apply the solver's reductions with nothing fixed.

    Returns ``(h, forced)``: phi(g) = len(forced) + phi(h).
    """
    adj = _adjacency(g)
    forced = []
    _Solver(None).reduce(adj, set(), forced)
    edges = []
    for v, nb in adj.items():
        for w, c in nb.items():
            if v < w or v == w:
                edges += [(v, w)] * c
    return Graph(adj.keys(), edges), frozenset(forced)


def min_fvs_exact(g, timeout=None):
    """Minimum feedback vertex set by branch and bound.

    ``timeout`` in seconds; on expiry raises ResourceError with the best set found.
    """
    start = time.perf_counter()
    adj = _adjacency(g)
    solver = _Solver(None if timeout is None else start + timeout)
    try:
        solver.solve(adj, set(), [])
    except _Timeout:
        best = None if solver.best is None else frozenset(solver.best)
        raise ResourceError(f"exact search exceeded {timeout}s", best=best) from None
    witness = frozenset(solver.best)
    if not is_feedback_vertex_set(g, witness):
        raise IntegrityError("exact witness is not a feedback vertex set")
    return FvsResult(len(witness), witness, "branch_and_bound", (time.perf_counter() - start) * 1000)
