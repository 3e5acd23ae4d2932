import io
import json
import random

import networkx as nx
import pytest

from fvslab.errors import DomainError, ResourceError
from fvslab.formats import from_graph6
from fvslab.graph import Graph
from fvslab.harness import (
    GraphReport,
    Summary,
    VerifyConfig,
    enumerate_graphs,
    graph_id,
    named_corpus,
    random_planar_corpus,
    random_planar_girth5,
    run_verification,
    write_report,
)
from fvslab.iso import are_isomorphic, canonical_form
from fvslab.structure import girth, has_two_disjoint_short_cycles, is_planar


def _atlas(max_n, keep):
    out = {}
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > max_n or not nx.is_connected(h):
            continue
        g = Graph.from_networkx(h)
        if keep(g):
            out[canonical_form(g)] = g
    return out


def _enumerated(max_n, **filters):
    graphs = list(enumerate_graphs(max_n, **filters))
    keys = [canonical_form(g) for g in graphs]
    assert len(keys) == len(set(keys))
    return set(keys)


def test_connected_counts():
    per_n = [0] * 6
    for g in enumerate_graphs(5):
        assert g.is_connected()
        per_n[g.n] += 1
    assert per_n[1:] == [1, 1, 2, 6, 21]


def test_girth5_small_graphs():
    graphs = list(enumerate_graphs(5, girth_min=5))
    assert len(graphs) == 9
    cycles = [g for g in graphs if not g.is_acyclic()]
    assert len(cycles) == 1 and cycles[0].n == 5 and cycles[0].m == 5
    assert sum(1 for g in graphs if g.n == 5) == 4


@pytest.mark.parametrize("filters,keep", [
    ({}, lambda g: True),
    ({"subcubic": True}, lambda g: g.max_degree() <= 3),
    ({"planar": True}, is_planar),
    ({"girth_min": 4}, lambda g: girth(g) >= 4),
    ({"girth_min": 5}, lambda g: girth(g) >= 5),
    ({"subcubic": True, "ntdsc": True}, lambda g: g.max_degree() <= 3 and not has_two_disjoint_short_cycles(g)),
    ({"planar": True, "girth_min": 5, "subcubic": True},
     lambda g: is_planar(g) and girth(g) >= 5 and g.max_degree() <= 3),
])
def test_enumeration_matches_atlas(filters, keep):
    assert _enumerated(7, **filters) == set(_atlas(7, keep))


def test_subcubic_n4_count():
    # no connected graph on four vertices has a vertex of degree four
    assert len(list(enumerate_graphs(4, subcubic=True))) == 1 + 1 + 2 + 6


def test_enumeration_is_deterministic():
    a = [g.edges for g in enumerate_graphs(6, subcubic=True)]
    b = [g.edges for g in enumerate_graphs(6, subcubic=True)]
    assert a == b


def test_enumeration_limits():
    with pytest.raises(ResourceError):
        list(enumerate_graphs(13))
    with pytest.raises(DomainError):
        list(enumerate_graphs(4, connected=False))
    assert list(enumerate_graphs(0)) == []


def test_subcubic_girth5_counts_to_11():
    per_n = [0] * 12
    for g in enumerate_graphs(11, subcubic=True, girth_min=5):
        per_n[g.n] += 1
    assert per_n[1:] == [1, 1, 1, 2, 3, 6, 12, 29, 69, 201, 574]


def test_named_corpus(named):
    d = named["dodecahedron"]
    assert (d.n, d.m) == (20, 30) and set(d.degrees().values()) == {3}
    assert is_planar(d) and girth(d) == 5
    v8 = named["V8"]
    assert (v8.n, v8.m) == (8, 12) and set(v8.degrees().values()) == {3}
    assert are_isomorphic(named["M6"], named["K3,3"])
    assert named["K4+"].n == 5 and named["K4+"].m == 7
    again = named_corpus()
    assert {k: canonical_form(g) for k, g in again.items()} == {k: canonical_form(g) for k, g in named.items()}


def test_random_planar_generator():
    rng = random.Random(5)
    for _ in range(30):
        g = random_planar_girth5(rng, rng.randint(5, 24))
        assert g.is_connected() and is_planar(g) and girth(g) >= 5
        # maximal: no further edge keeps both properties
        h = g.to_networkx()
        for u, v in nx.non_edges(h):
            if nx.shortest_path_length(h, u, v) >= 4:
                h.add_edge(u, v)
                assert not nx.check_planarity(h)[0]
                h.remove_edge(u, v)
    assert [g.edges for g in random_planar_corpus(9, 5)] == [g.edges for g in random_planar_corpus(9, 5)]


def test_graph_id_is_canonical_graph6():
    g = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    h = g.relabel({0: 3, 1: 0, 2: 4, 3: 1, 4: 2})
    assert graph_id(g) == graph_id(h)
    assert are_isomorphic(from_graph6(graph_id(g)), g)
    assert graph_id(Graph([0, 1], [(0, 1), (0, 1)])).startswith("multi:")


def _check_rows(rows):
    for row in rows:
        assert row.status in ("pass", "fail", "fallback", "skipped")
        if row.status == "pass" and row.constructive_size is not None:
            assert 7 * row.constructive_size <= row.bound_numerator
            assert row.exact_phi <= row.constructive_size
        if row.bound_numerator is not None and row.r_numerator is not None and row.corpus != "family":
            assert row.bound_numerator == 2 * row.m - row.n + 2 + row.r_numerator


def test_bounds_suite_on_small_corpus():
    cfg = VerifyConfig(max_n=7, random_count=10, timing=False)
    rows = list(run_verification("bounds", cfg))
    _check_rows(rows)
    # M10 carries two disjoint 4-cycles, so neither bound applies to it
    assert [r.name for r in rows if r.status != "pass"] == ["M10"]
    assert [r.status for r in rows if r.name == "M10"] == ["skipped"]
    (dodec,) = [r for r in rows if r.name == "dodecahedron"]
    assert dodec.slack == 0 and dodec.constructive_size == 6


def test_claims_suite_on_small_corpus():
    rows = list(run_verification("claims", VerifyConfig(max_n=8, timing=False)))
    _check_rows(rows)
    assert rows and all(r.status in ("pass", "skipped") for r in rows)


def test_oracle_suite_on_small_corpus():
    rows = list(run_verification("oracle", VerifyConfig(max_n=5, random_count=5, timing=False)))
    assert len(rows) == 31 + 10
    assert all(r.status == "pass" for r in rows)


def test_family_suite_small_cap():
    rows = list(run_verification("family_lemmas", VerifyConfig(family_cap=9, family_exact_cap=9, timing=False)))
    assert rows and all(r.status == "pass" for r in rows), [r for r in rows if r.status != "pass"][:3]


def test_unknown_suite():
    with pytest.raises(DomainError):
        list(run_verification("nope"))


def test_empty_stream_summary():
    out = io.StringIO()
    summary = write_report("claims", VerifyConfig(max_n=0, timing=False), out)
    lines = out.getvalue().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["header"]["suite"] == "claims"
    assert json.loads(lines[1])["summary"] == {"total": 0, "pass": 0, "fail": 0, "fallback": 0, "skipped": 0,
                                               "max_slack": None, "max_gap": None}
    assert summary.ok()


def test_summary_counts():
    s = Summary()
    base = dict(graph_id="x", n=5, m=5, girth=5, planar=True, exact_phi=1, constructive_size=1,
                bound_numerator=7, r_numerator=0, millis=0.0, corpus="planar-girth5")
    s.add(GraphReport(status="pass", **base))
    s.add(GraphReport(status="fallback", **base))
    assert s.to_json()["fallback"] == 1 and not s.ok() and s.ok(fallback_allowed=True)
    s.add(GraphReport(status="fail", **base))
    assert not s.ok(fallback_allowed=True)
    assert s.max_slack == 0 and s.max_gap == 0


def test_reports_are_byte_identical():
    cfg = VerifyConfig(max_n=7, random_count=5, timing=False)
    a, b = io.StringIO(), io.StringIO()
    write_report("bounds", cfg, a)
    write_report("bounds", cfg, b)
    assert a.getvalue() == b.getvalue()


def test_worker_pool_keeps_order(monkeypatch):
    cfg = VerifyConfig(max_n=6, random_count=3, timing=False)
    single = io.StringIO()
    write_report("oracle", cfg, single)
    monkeypatch.setenv("FVSLAB_WORKERS", "2")
    pooled = io.StringIO()
    write_report("oracle", cfg, pooled)
    assert single.getvalue() == pooled.getvalue()
