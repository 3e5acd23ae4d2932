"""Exhaustive acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that the session summary prints.  The corpora
are large; expect roughly half an hour on one core.
"""

import time
from fractions import Fraction

import networkx as nx
import pytest

from fvslab import (
    fvs_planar_girth5,
    generate_family,
    is_feedback_vertex_set,
    min_fvs_exact,
    verify_certificate,
)
from fvslab.family import family_fvs, forbidden_family
from fvslab.graph import Graph
from fvslab.harness import (
    VerifyConfig,
    _cell_checks,
    enumerate_graphs,
    family_cells,
    random_planar_corpus,
    run_verification,
)
from fvslab.structure import girth, is_planar

FAMILY_CAP = 16
EXACT_CAP = 14
PLANAR_EXHAUSTIVE = 2404          # connected planar girth>=5 graphs, n <= 11
SUBCUBIC_GIRTH5 = 32218           # connected subcubic girth>=5 graphs, n <= 14
FORBIDDEN_COUNT = 15


def _record(criteria, k, ok, detail):
    criteria[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


# -- 1 ----------------------------------------------------------------------------------

def test_criterion_1_dodecahedron_is_tight(criteria):
    start = time.perf_counter()
    g = Graph.from_networkx(nx.dodecahedral_graph())
    phi = min_fvs_exact(g).size
    cert = fvs_planar_girth5(g)
    elapsed = time.perf_counter() - start
    bound = Fraction(2 * g.m - g.n + 2, 7)
    ok = (phi == 6 and bound == 6 and cert.size == 6 and verify_certificate(g, cert)
          and cert.bound_numerator - 7 * cert.size == 0 and elapsed < 1.0)
    _record(criteria, 1, ok, f"phi={phi} bound={bound} certificate={cert.size} {elapsed:.2f}s")
    assert ok


# -- 2 and 3 -------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def planar_runs():
    start = time.perf_counter()
    exhaustive = list(enumerate_graphs(11, planar=True, girth_min=5))
    corpus = [("exhaustive", g) for g in exhaustive]
    corpus += [("random", g) for g in random_planar_corpus(seed=0, count=500, max_n=24)]
    runs = []
    for kind, g in corpus:
        cert = fvs_planar_girth5(g)
        runs.append((kind, g, cert, min_fvs_exact(g).size))
    return runs, time.perf_counter() - start


def test_criterion_2_planar_girth5_bound(planar_runs, criteria):
    runs, elapsed = planar_runs
    bad = []
    for kind, g, cert, phi in runs:
        assert girth(g) >= 5 and is_planar(g) and g.is_connected()
        if kind == "random":
            assert g.n <= 24
        ok = (7 * phi <= 2 * g.m - g.n + 2 and verify_certificate(g, cert)
              and not cert.fallback_used and cert.r_value == 0 and phi <= cert.size)
        if not ok:
            bad.append(g)
    n_ex = sum(1 for r in runs if r[0] == "exhaustive")
    n_rand = len(runs) - n_ex
    gap = max(cert.size - phi for _, _, cert, phi in runs)
    ok = not bad and n_ex == PLANAR_EXHAUSTIVE and n_rand == 500 and elapsed < 30 * 60
    _record(criteria, 2, ok, f"{n_ex} exhaustive + {n_rand} random graphs, {len(bad)} failures, "
                             f"max gap to optimum {gap}, {elapsed:.0f}s")
    assert ok, bad[:3]


def test_criterion_3_planar_corollaries(planar_runs, criteria):
    runs, _ = planar_runs
    bad = [g for _, g, _, phi in runs
           if 5 * phi > g.m or (g.n >= 4 and 3 * phi > g.n - 2)]
    ok = not bad
    _record(criteria, 3, ok, f"phi <= m/5 and phi <= (n-2)/3 on {len(runs)} graphs, {len(bad)} failures")
    assert ok, bad[:3]


# -- 4 -------------------------------------------------------------------------------------

def test_criterion_4_subcubic_bound(criteria):
    start = time.perf_counter()
    cfg = VerifyConfig(max_n=14, timing=False)
    rows = [r for r in run_verification("claims", cfg) if r.corpus == "subcubic-girth5"]
    checked = [r for r in rows if r.status != "skipped"]
    failures = [r for r in checked if r.status != "pass"]
    # planar girth-5 graphs carry no error term
    nonzero_planar = [r for r in checked if r.planar and r.r_numerator != 0]
    gap = max(r.constructive_size - r.exact_phi for r in checked)
    elapsed = time.perf_counter() - start
    ok = len(rows) == SUBCUBIC_GIRTH5 and not failures and not nonzero_planar
    _record(criteria, 4, ok, f"{len(checked)} certified, {len(rows) - len(checked)} skipped as containing a "
                             f"forbidden subdivision, {len(failures)} failures, max gap {gap}, {elapsed:.0f}s")
    assert ok, [(r.graph_id, r.failed_checks) for r in failures[:3]]


# -- 5 -------------------------------------------------------------------------------------

def _cells():
    return {(i, j): generate_family(i, j, cap=FAMILY_CAP) for i, j in family_cells(FAMILY_CAP)}


@pytest.fixture(scope="module")
def families():
    start = time.perf_counter()
    cells = _cells()
    return cells, time.perf_counter() - start


def test_criterion_5_family_structure(families, named, criteria):
    cells, gen_time = families
    start = time.perf_counter()
    failed = []
    for (i, j), members in cells.items():
        failed += [f"F({i},{j}) {c}" for c in _cell_checks(i, j, members)]
        for mem in members:
            g = mem.graph
            if (g.n, g.m) != (i + 3 * j, i + 5 * j) or mem.degree2_count != i - j:
                failed.append(f"F({i},{j}) counts")
            if Fraction(2 * g.m - g.n + 2, 7) != Fraction(i + 2, 7) + j:
                failed.append(f"F({i},{j}) bound identity")
            if g.is_simple == ((i, j) in ((1, 0), (2, 0))):
                failed.append(f"F({i},{j}) simplicity")
    sizes = {k: len(cells[k]) for k in ((1, 1), (2, 1), (3, 1))}
    if sizes != {(1, 1): 1, (2, 1): 1, (3, 1): 3}:
        failed.append(f"cell sizes {sizes}")
    elapsed = gen_time + time.perf_counter() - start
    ok = not failed and elapsed < 5 * 60
    total = sum(len(m) for m in cells.values())
    _record(criteria, 5, ok, f"{len(cells)} cells, {total} members, {len(failed)} failures, {elapsed:.0f}s")
    assert ok, failed[:5]


# -- 6 -------------------------------------------------------------------------------------

def test_criterion_6_member_feedback_sets(families, criteria):
    cells, _ = families
    start = time.perf_counter()
    failed = []
    count = 0
    for (i, j), members in cells.items():
        if i + 3 * j > EXACT_CAP:
            continue
        eps7 = max(5 - i, 0)
        for mem in members:
            g = mem.graph
            count += 1
            bound7 = 2 * g.m - g.n + 2 + eps7
            for e in sorted(set(g.edges)):
                h = g.remove_edge(*e)
                s = family_fvs(mem, deleted=e)
                if not is_feedback_vertex_set(h, s) or 7 * len(s) > bound7 - 7 \
                        or 7 * min_fvs_exact(h).size > bound7 - 7:
                    failed.append((g, e))
            for v in g.vertices:
                s = family_fvs(mem, target=v)
                if v not in s or not is_feedback_vertex_set(g, s) or 7 * len(s) > bound7:
                    failed.append((g, v))
    elapsed = time.perf_counter() - start
    ok = not failed
    _record(criteria, 6, ok, f"{count} members with n <= {EXACT_CAP}, {len(failed)} failures, {elapsed:.0f}s")
    assert ok, failed[:3]


# -- 7 -------------------------------------------------------------------------------------

def test_criterion_7_planarity_of_families(families, criteria):
    cells, _ = families
    failed = []
    for (i, j), members in cells.items():
        if i > 4:
            continue
        for mem in members:
            g = mem.graph
            if not g.is_simple or not is_planar(g):
                continue
            if girth(g) >= 5:
                failed.append(("planar girth 5", i, j))
            if j > 0 and i < 4 and any(girth(g.remove_edge(*e)) >= 5 for e in set(g.edges)):
                failed.append(("planar edge to girth 5", i, j))
    forbidden = forbidden_family()
    planar_forbidden = [g for g in forbidden if is_planar(g)]
    ok = not failed and not planar_forbidden and len(forbidden) == FORBIDDEN_COUNT
    _record(criteria, 7, ok, f"{len(failed)} planar exceptions with i <= 4, |forbidden| = {len(forbidden)}, "
                             f"{len(planar_forbidden)} planar forbidden graphs")
    assert ok, failed[:3]


# -- 8 -------------------------------------------------------------------------------------

def test_criterion_8_oracle_integrity(criteria):
    start = time.perf_counter()
    rows = list(run_verification("oracle", VerifyConfig(max_n=9, random_count=500, timing=False)))
    exhaustive = [r for r in rows if r.corpus == "connected"]
    random_rows = [r for r in rows if r.corpus == "random-connected"]
    failures = [r for r in rows if r.status != "pass"]
    elapsed = time.perf_counter() - start
    ok = (not failures and len(exhaustive) == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117 + 261080
          and len(random_rows) == 1000 and max(r.n for r in random_rows) <= 16 and elapsed < 20 * 60)
    _record(criteria, 8, ok, f"{len(exhaustive)} exhaustive + {len(random_rows)} random graphs, "
                             f"{len(failures)} disagreements, {elapsed:.0f}s")
    assert ok, [r.graph_id for r in failures[:3]]
