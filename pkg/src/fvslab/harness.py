"""Graph corpora and verification runs.

Corpora come from three places: orderly generation of small graphs with
isomorph rejection, a handful of named graphs, and a seeded generator of
random planar girth-5 graphs.  :func:`run_verification` pushes a corpus
through the solvers and yields one :class:`GraphReport` per graph.
"""

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pynauty

from .constructive import (
    check_subcubic_input,
    forbidden_witness,
    fvs_planar_girth5,
    fvs_subcubic,
    verify_certificate,
)
from .errors import DomainError, IntegrityError, ResourceError
from .exact import is_feedback_vertex_set, min_fvs_bruteforce, min_fvs_exact
from .family import family_fvs, find_member, forbidden_family, generate_family, signature_from_counts
from .formats import to_graph6
from .graph import Graph
from .iso import canonical_form, canonical_graph
from .structure import (
    girth,
    has_two_disjoint_short_cycles,
    is_internally_3ec,
    is_planar,
    is_two_connected,
    short_cycles,
)

UNRESTRICTED_MAX_N = 12


# -- exhaustive enumeration ------------------------------------------------------

def _key(n, adj):
    ng = pynauty.Graph(n, adjacency_dict={v: [w for w in range(n) if adj[v] >> w & 1] for v in range(n)})
    return pynauty.certificate(ng)


def _far_apart(adj, n, chosen, limit):
    """No two chosen vertices are joined by a path with fewer than ``limit`` edges."""
    for s in chosen:
        frontier = 1 << s
        seen = frontier
        for _ in range(limit - 1):
            nxt = 0
            for v in range(n):
                if frontier >> v & 1:
                    nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        for t in chosen:
            if t != s and seen >> t & 1:
                return False
    return True


def enumerate_graphs(max_n, connected=True, planar=False, girth_min=None, subcubic=False,
                     ntdsc=False, forbidden_free=False):
    """Connected graphs on 1..max_n vertices, one per isomorphism class.

    Every class here is closed under deleting a vertex that keeps the graph
    connected, so each graph on n + 1 vertices arises by attaching a new
    vertex to some graph on n vertices.  Order is deterministic.
    """
    if not connected:
        raise DomainError("only connected graphs are enumerated")
    if max_n > UNRESTRICTED_MAX_N and not (subcubic or planar or girth_min):
        raise ResourceError(f"unrestricted enumeration is capped at {UNRESTRICTED_MAX_N} vertices")
    if max_n < 1:
        return
    level = [[0]]
    yield Graph([0], [])
    for n in range(1, max_n):
        seen = set()
        nxt = []
        for adj in level:
            pool = [v for v in range(n) if not subcubic or bin(adj[v]).count("1") < 3]
            top = min(3, len(pool)) if subcubic else len(pool)
            for k in range(1, top + 1):
                for chosen in combinations(pool, k):
                    if girth_min and k > 1 and not _far_apart(adj, n, chosen, girth_min - 2):
                        continue
                    new = adj + [0]
                    for v in chosen:
                        new[v] |= 1 << n
                        new[n] |= 1 << v
                    key = _key(n + 1, new)
                    if key in seen:
                        continue
                    seen.add(key)
                    if not (planar or ntdsc or forbidden_free):
                        nxt.append(new)
                        continue
                    g = _from_masks(new)
                    if planar and not is_planar(g):
                        continue
                    if ntdsc and has_two_disjoint_short_cycles(g):
                        continue
                    if forbidden_free and forbidden_witness(g) is not None:
                        continue
                    nxt.append(new)
        level = nxt
        for adj in level:
            yield _from_masks(adj)


def _from_masks(adj):
    n = len(adj)
    return Graph(range(n), [(u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1])


# -- named graphs ----------------------------------------------------------------

def _nx(g):
    return Graph.from_networkx(nx.convert_node_labels_to_integers(g))


def mobius(n):
    """The n-cycle plus chords between opposite vertices."""
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)] + [(i, i + n // 2) for i in range(n // 2)])


def named_corpus():
    k4 = _nx(nx.complete_graph(4))
    return {
        "dodecahedron": _nx(nx.dodecahedral_graph()),
        "Q3": _nx(nx.hypercube_graph(3)),
        "V8": mobius(8),
        "K4": k4,
        "K4+": k4.remove_edge(0, 1).add_vertices([4]).add_edges([(0, 4), (4, 1)]),
        "K3,3": _nx(nx.complete_bipartite_graph(3, 3)),
        "M6": mobius(6),
        "M8": mobius(8),
        "M10": mobius(10),
        "Petersen": _nx(nx.petersen_graph()),
    }


# -- random planar girth-5 graphs ------------------------------------------------------

def random_planar_girth5(rng, n):
    """Random spanning tree grown to a maximal planar girth-5 graph."""
    order = list(range(n))
    rng.shuffle(order)
    h = nx.Graph()
    h.add_nodes_from(range(n))
    for k in range(1, n):
        h.add_edge(order[k], order[rng.randrange(k)])
    pairs = [(u, v) for u, v in combinations(range(n), 2) if not h.has_edge(u, v)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if nx.shortest_path_length(h, u, v) < 4:
            continue
        h.add_edge(u, v)
        if not nx.check_planarity(h)[0]:
            h.remove_edge(u, v)
    return Graph(range(n), h.edges())


def random_planar_corpus(seed, count=500, min_n=5, max_n=24):
    rng = random.Random(seed)
    return [random_planar_girth5(rng, rng.randint(min_n, max_n)) for _ in range(count)]


# -- reports ---------------------------------------------------------------------------

@dataclass
class GraphReport:
    graph_id: str
    n: int
    m: int
    girth: object          # int, or "inf" for forests
    planar: bool
    exact_phi: object
    constructive_size: object
    bound_numerator: object
    r_numerator: object
    status: str            # pass, fail, fallback or skipped
    millis: float
    corpus: str = ""
    name: str = ""
    failed_checks: tuple = ()

    @property
    def slack(self):
        if self.bound_numerator is None or self.exact_phi is None:
            return None
        return self.bound_numerator - 7 * self.exact_phi

    def to_json(self):
        out = asdict(self)
        out["failed_checks"] = list(self.failed_checks)
        return out

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass
class VerifyConfig:
    max_n: int = None
    seed: int = 0
    random_count: int = 500
    fallback_exact: bool = False
    timing: bool = True
    workers: int = None
    family_cap: int = 16
    family_exact_cap: int = 14


def graph_id(g):
    if g.is_simple:
        return to_graph6(canonical_graph(g))
    c = canonical_graph(g)
    return "multi:" + ";".join(f"{u}-{v}" for u, v in c.edges)


def _girth_field(g):
    if g.n == 0:
        return "inf"
    value = girth(g)
    return "inf" if value == float("inf") else int(value)


def _report(g, corpus, name, start, cfg, status, failed=(), phi=None, cert=None, bound=None, rnum=None):
    if cert is not None:
        bound, rnum = cert.bound_numerator, cert.r_numerator
    millis = round((time.perf_counter() - start) * 1000, 3) if cfg.timing else 0.0
    return GraphReport(
        graph_id=graph_id(g), n=g.n, m=g.m, girth=_girth_field(g), planar=is_planar(g),
        exact_phi=phi, constructive_size=None if cert is None else cert.size,
        bound_numerator=bound, r_numerator=rnum, status=status, millis=millis,
        corpus=corpus, name=name, failed_checks=tuple(failed),
    )


def _status(cert, failed):
    if failed:
        return "fail"
    return "fallback" if cert.fallback_used else "pass"


def _certificate_checks(g, cert, phi):
    failed = []
    if not verify_certificate(g, cert):
        failed.append("certificate")
    if phi > cert.size:
        failed.append("exact_le_constructive")
    return failed


def _eval_planar(g, corpus, name, cfg):
    """Planar girth-5 bound and its corollaries."""
    start = time.perf_counter()
    try:
        cert = fvs_planar_girth5(g, fallback_exact=cfg.fallback_exact)
    except DomainError:
        return _report(g, corpus, name, start, cfg, "skipped")
    except IntegrityError:
        return _report(g, corpus, name, start, cfg, "fail", ["integrity"])
    phi = min_fvs_exact(g).size
    failed = _certificate_checks(g, cert, phi)
    if 7 * phi > 2 * g.m - g.n + 2:
        failed.append("planar_bound")
    if 5 * phi > g.m:
        failed.append("edges_over_five")
    if g.n >= 4 and 3 * phi > g.n - 2:
        failed.append("vertices_bound")
    return _report(g, corpus, name, start, cfg, _status(cert, failed), failed, phi, cert)


def _is_k4(g):
    return g.n == 4 and g.m == 6 and g.is_simple


def _subcubic_property_checks(g, r, phi):
    """Error-term properties of subcubic inputs without two disjoint short cycles."""
    failed = []
    if r > Fraction(4, 7):
        failed.append("r_le_4_7")
    if not _is_k4(g):
        if r > Fraction(3, 7):
            failed.append("r_le_3_7")
        if r == Fraction(3, 7) and not short_cycles(g, 3):
            failed.append("r_3_7_triangle")
    if g.n and girth(g) >= 5 and r != 0:
        sig = signature_from_counts(g.n, g.m)
        if sig is None or (sig.i, sig.j) not in ((3, 3), (4, 4)) or find_member(g, cap=None) is None:
            failed.append("girth5_r_zero")
    if r > 0 and is_two_connected(g):
        for e in sorted(set(g.edges)):
            if 7 * min_fvs_exact(g.remove_edge(*e)).size > 2 * g.m - g.n - 5 + 7 * r:
                failed.append("edge_deletion")
                break
    if g.n >= 4 and all(d == 3 for d in g.degrees().values()) and is_internally_3ec(g):
        if nx.node_connectivity(g.to_networkx()) < 3:
            failed.append("three_paths")
    return failed


def _eval_subcubic(g, corpus, name, cfg):
    start = time.perf_counter()
    try:
        check_subcubic_input(g, check_forbidden=True)
    except DomainError:
        return _report(g, corpus, name, start, cfg, "skipped")
    try:
        cert = fvs_subcubic(g, fallback_exact=cfg.fallback_exact, check_forbidden=False)
    except IntegrityError:
        return _report(g, corpus, name, start, cfg, "fail", ["integrity"])
    phi = min_fvs_exact(g).size
    failed = _certificate_checks(g, cert, phi)
    # the error-term properties are stated for graphs without two disjoint short cycles
    if not has_two_disjoint_short_cycles(g):
        failed += _subcubic_property_checks(g, cert.r_value, phi)
    return _report(g, corpus, name, start, cfg, _status(cert, failed), failed, phi, cert)


def _eval_named(g, corpus, name, cfg):
    if g.is_simple and girth(g) >= 5 and is_planar(g):
        return _eval_planar(g, corpus, name, cfg)
    return _eval_subcubic(g, corpus, name, cfg)


# -- family checks --------------------------------------------------------------------------

def _k4_variants():
    """K4 with one edge subdivided twice, or two edges (adjacent or disjoint) subdivided once."""
    k4 = Graph.from_edges([(a, b) for a, b in combinations(range(4), 2)])
    twice = k4.remove_edge(0, 1).add_vertices([4, 5]).add_edges([(0, 4), (4, 5), (5, 1)])
    adjacent = k4.remove_edge(0, 1).remove_edge(0, 2).add_vertices([4, 5]).add_edges(
        [(0, 4), (4, 1), (0, 5), (5, 2)])
    matching = k4.remove_edge(0, 1).remove_edge(2, 3).add_vertices([4, 5]).add_edges(
        [(0, 4), (4, 1), (2, 5), (5, 3)])
    return twice, adjacent, matching


def _cell_checks(i, j, members):
    """Statements about a whole cell F(i, j)."""
    graphs = [m.graph for m in members]
    keys = {canonical_form(g) for g in graphs}
    named = named_corpus()
    failed = []
    if j == 0:
        g = graphs[0] if len(graphs) == 1 else None
        if g is None or g.n != i or any(d != 2 for d in g.degrees().values()) or not g.is_connected():
            failed.append("cycle_cell")
    if (i, j) == (1, 1) and keys != {canonical_form(named["K4"])}:
        failed.append("k4_cell")
    if (i, j) == (2, 1) and keys != {canonical_form(named["K4+"])}:
        failed.append("k4plus_cell")
    if (i, j) == (3, 1):
        twice, adjacent, matching = _k4_variants()
        if keys != {canonical_form(h) for h in (twice, adjacent, matching)}:
            failed.append("f31_shapes")
        if [canonical_form(g) for g in graphs if girth(g) >= 4] != [canonical_form(matching)]:
            failed.append("f31_girth4")
    if (i, j) == (2, 2):
        special = {canonical_form(named["Q3"]), canonical_form(named["V8"])}
        if not special <= keys:
            failed.append("q3_v8_members")
        for g in graphs:
            if not has_two_disjoint_short_cycles(g):
                failed.append("f22_disjoint_short")
            elif canonical_form(g) not in special and not _triangle_apart(g):
                failed.append("f22_triangle")
    if (i, j) in ((3, 2), (4, 1)) and any(girth(g) > 4 for g in graphs):
        failed.append("girth_le_4")
    return sorted(set(failed))


def _triangle_apart(g):
    cycles = short_cycles(g, 4)
    return any(len(t) == 3 and any(not set(t) & set(c) for c in cycles) for t in cycles)


def _member_checks(member, exact_cap):
    g = member.graph
    i, j = member.signature.i, member.signature.j
    failed = []
    if g.is_simple == (j == 0 and i in (1, 2)):
        failed.append("simple")
    if (g.n, g.m) != (i + 3 * j, i + 5 * j) or member.degree2_count != i - j:
        failed.append("counts")
    if Fraction(2 * g.m - g.n + 2, 7) != Fraction(i + 2, 7) + j:
        failed.append("bound_identity")
    # both planarity statements only constrain cells with i <= 4
    if i <= 4 and g.is_simple and is_planar(g):
        if girth(g) >= 5:
            failed.append("planar_girth5_small_i")
        if i <= 3 and j > 0 and any(girth(g.remove_edge(*e)) >= 5 for e in set(g.edges)):
            failed.append("planar_edge_girth5")
    if g.n > exact_cap:
        return failed
    limit7 = 2 * g.m - g.n + 2 + max(5 - i, 0)
    for e in sorted(set(g.edges)):
        h = g.remove_edge(*e)
        s = family_fvs(member, deleted=e)
        if not is_feedback_vertex_set(h, s) or 7 * len(s) > limit7 - 7 or min_fvs_exact(h).size > len(s):
            failed.append("edge_property")
            break
    for v in g.vertices:
        s = family_fvs(member, target=v)
        if v not in s or not is_feedback_vertex_set(g, s) or 7 * len(s) > limit7:
            failed.append("vertex_property")
            break
    return failed


def _eval_member(member, cfg, exact_cap):
    start = time.perf_counter()
    g = member.graph
    failed = _member_checks(member, exact_cap)
    phi = min_fvs_exact(g).size if g.n <= exact_cap else None
    eps7 = max(5 - member.signature.i, 0)
    bound = 2 * g.m - g.n + 2 + eps7
    if phi is not None and 7 * phi > bound:
        failed.append("member_bound")
    name = f"F({member.signature.i},{member.signature.j})"
    return _report(g, "family", name, start, cfg, "fail" if failed else "pass", failed, phi,
                   bound=bound, rnum=eps7)


def family_cells(cap):
    return [(i, j) for j in range(cap // 3 + 1) for i in range(max(j, 1), cap - 3 * j + 1)]


def _family_rows(cfg):
    cap, exact_cap = cfg.family_cap, cfg.family_exact_cap
    for i, j in family_cells(cap):
        members = generate_family(i, j, cap=cap)
        start = time.perf_counter()
        failed = _cell_checks(i, j, members)
        millis = round((time.perf_counter() - start) * 1000, 3) if cfg.timing else 0.0
        yield GraphReport(f"cell:{i},{j}", i + 3 * j, i + 5 * j, None, None, None, None, None,
                          None, "fail" if failed else "pass", millis, "family-cell",
                          f"F({i},{j}) size {len(members)}", tuple(failed))
        for member in members:
            yield _eval_member(member, cfg, exact_cap)
    for h in forbidden_family():
        start = time.perf_counter()
        failed = [] if not is_planar(h) else ["forbidden_nonplanar"]
        yield _report(h, "forbidden", "forbidden member", start, cfg,
                      "fail" if failed else "pass", failed)


# -- driving a suite -------------------------------------------------------------------------

SUITES = ("bounds", "claims", "family_lemmas", "oracle", "all")


def _eval_oracle(g, corpus, name, cfg):
    start = time.perf_counter()
    a = min_fvs_exact(g)
    b = min_fvs_bruteforce(g)
    failed = []
    if a.size != b.size or not is_feedback_vertex_set(g, a.witness) or not is_feedback_vertex_set(g, b.witness):
        failed.append("oracle_agreement")
    return _report(g, corpus, name, start, cfg, "fail" if failed else "pass", failed, a.size)


def random_connected(rng, n):
    """Random spanning tree plus independent extra edges with a random density."""
    p = rng.uniform(0.0, 0.5)
    edges = {tuple(sorted((k, rng.randrange(k)))) for k in range(1, n)}
    edges |= {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    return Graph(range(n), edges)


def _cap(cfg, default):
    return default if cfg.max_n is None else min(cfg.max_n, default)


def _tasks(suite, cfg):
    """(evaluator, graph, corpus, name) in report order."""
    if suite in ("bounds", "all"):
        for name, g in named_corpus().items():
            yield _eval_named, g, "named", name
        for g in enumerate_graphs(11 if cfg.max_n is None else cfg.max_n, planar=True, girth_min=5):
            yield _eval_planar, g, "planar-girth5", ""
        for k, g in enumerate(random_planar_corpus(cfg.seed, cfg.random_count)):
            yield _eval_planar, g, "random-planar-girth5", f"seed {cfg.seed} #{k}"
    if suite in ("claims", "all"):
        for g in enumerate_graphs(14 if cfg.max_n is None else cfg.max_n, subcubic=True, girth_min=5):
            yield _eval_subcubic, g, "subcubic-girth5", ""
        for g in enumerate_graphs(_cap(cfg, 10), subcubic=True, ntdsc=True):
            if girth(g) < 5:
                yield _eval_subcubic, g, "subcubic-short-cycles", ""
    if suite in ("oracle", "all"):
        for g in enumerate_graphs(9 if cfg.max_n is None else min(cfg.max_n, UNRESTRICTED_MAX_N)):
            yield _eval_oracle, g, "connected", ""
        rng = random.Random(cfg.seed)
        for k in range(cfg.random_count * 2):
            yield _eval_oracle, random_connected(rng, rng.randint(1, 16)), "random-connected", f"seed {cfg.seed} #{k}"


def _run_task(task):
    fn, g, corpus, name, cfg = task
    return fn(g, corpus, name, cfg)


def worker_count(cfg):
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get("FVSLAB_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def run_verification(suite, config=None):
    """Yield GraphReports for ``suite``; rows keep corpus order whatever the pool does."""
    cfg = config or VerifyConfig()
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite in ("family_lemmas", "all"):
        yield from _family_rows(cfg)
    tasks = ((fn, g, corpus, name, cfg) for fn, g, corpus, name in _tasks(suite, cfg))
    workers = worker_count(cfg)
    if workers == 1:
        yield from map(_run_task, tasks)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_task, tasks, chunksize=16)


@dataclass
class Summary:
    total: int = 0
    passed: int = 0
    failed: int = 0
    fallback: int = 0
    skipped: int = 0
    max_slack: object = None
    max_gap: object = None

    def add(self, row):
        self.total += 1
        if row.status == "pass":
            self.passed += 1
        elif row.status == "fail":
            self.failed += 1
        elif row.status == "fallback":
            self.fallback += 1
        else:
            self.skipped += 1
        if row.status in ("pass", "fallback") and row.corpus not in ("family", "connected", "random-connected"):
            slack = row.slack
            if slack is not None and (self.max_slack is None or slack > self.max_slack):
                self.max_slack = slack
            if row.exact_phi is not None and row.constructive_size is not None:
                gap = row.constructive_size - row.exact_phi
                if self.max_gap is None or gap > self.max_gap:
                    self.max_gap = gap

    def ok(self, fallback_allowed=False):
        return self.failed == 0 and (fallback_allowed or self.fallback == 0)

    def to_json(self):
        return {"total": self.total, "pass": self.passed, "fail": self.failed,
                "fallback": self.fallback, "skipped": self.skipped,
                "max_slack": self.max_slack, "max_gap": self.max_gap}


def write_report(suite, cfg, stream):
    """Write header, rows and summary as JSON lines; returns the Summary."""
    summary = Summary()
    header = {"suite": suite, "seed": cfg.seed, "max_n": cfg.max_n, "random_count": cfg.random_count,
              "fallback_exact": cfg.fallback_exact}
    stream.write(json.dumps({"header": header}, sort_keys=True) + "\n")
    for row in run_verification(suite, cfg):
        summary.add(row)
        stream.write(row.dumps() + "\n")
    stream.write(json.dumps({"summary": summary.to_json()}, sort_keys=True) + "\n")
    return summary
