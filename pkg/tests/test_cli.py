import json
import subprocess
import sys

import networkx as nx
import pytest

from fvslab.cli import main
from fvslab.formats import read_graph_file, write_graph6_list
from fvslab.graph import Graph
from helpers import complete, cycle


def _json_lines(text):
    return [json.loads(ln) for ln in text.splitlines() if ln.strip()]


def test_families_generate(tmp_path, capsys):
    assert main(["families", "generate", "--i", "3", "--j", "1", "--out", str(tmp_path)]) == 0
    side = json.loads((tmp_path / "F_3_1.json").read_text())
    assert side["i"] == 3 and side["j"] == 1 and side["count"] == 3 and side["epsilon"] == "2/7"
    assert all(m["degree2_count"] == 2 for m in side["members"])
    assert len(read_graph_file(tmp_path / "F_3_1.g6")) == 3


def test_families_multigraph_cell_has_no_graph6(tmp_path):
    assert main(["families", "generate", "--i", "2", "--j", "0", "--out", str(tmp_path)]) == 0
    side = json.loads((tmp_path / "F_2_0.json").read_text())
    assert side["members"][0]["graph6"] is None
    assert not (tmp_path / "F_2_0.g6").exists()


def test_families_cap_is_a_resource_error(tmp_path, capsys):
    assert main(["families", "generate", "--i", "5", "--j", "5", "--cap", "10", "--out", str(tmp_path)]) == 2
    assert "cap" in capsys.readouterr().err


def test_enumerate(tmp_path, capsys):
    out = tmp_path / "g.g6"
    assert main(["enumerate", "--max-n", "5", "--filter", "connected,girth_min=5", "--out", str(out)]) == 0
    assert len(read_graph_file(out)) == 9
    assert main(["enumerate", "--max-n", "5", "--filter", "no_two_disjoint_short_cycles", "--out", str(out)]) == 0
    assert main(["enumerate", "--max-n", "5", "--filter", "bogus", "--out", str(out)]) == 2
    assert main(["enumerate", "--max-n", "20", "--out", str(out)]) == 2


def test_fvs_methods(tmp_path, capsys):
    path = tmp_path / "in.g6"
    dodec = Graph.from_networkx(nx.dodecahedral_graph())
    write_graph6_list([dodec, complete(4)], path)
    for method in ("exact", "brute"):
        assert main(["fvs", method, str(path)]) == 0
        rows = _json_lines(capsys.readouterr().out)
        assert [r["size"] for r in rows] == [6, 2]
        assert {"size", "witness", "method", "millis"} <= set(rows[0])


def test_fvs_construct_with_trace(tmp_path, capsys):
    path = tmp_path / "in.txt"
    path.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
    trace = tmp_path / "trace.json"
    assert main(["fvs", "construct", str(path), "--mode", "planar5", "--trace", str(trace)]) == 0
    (row,) = _json_lines(capsys.readouterr().out)
    assert row["size"] == 1 and row["bound_numerator"] == 7 and row["fallback_used"] is False
    doc = json.loads(trace.read_text())
    assert {"steps", "witness", "bound_numerator", "r_numerator", "fallback_used"} <= set(doc)
    assert {"rule", "removed_vertices", "removed_edges", "sub"} <= set(doc["steps"][0])


def test_fvs_construct_bad_input(tmp_path, capsys):
    path = tmp_path / "in.g6"
    write_graph6_list([complete(5)], path)
    assert main(["fvs", "construct", str(path)]) == 2
    assert main(["fvs", "construct", str(path), "--mode", "planar5"]) == 2
    assert main(["fvs", "exact", str(tmp_path / "missing.g6")]) == 2


def test_verify_writes_report(tmp_path, capsys):
    report = tmp_path / "r.jsonl"
    args = ["verify", "--suite", "bounds", "--max-n", "6", "--random-count", "3", "--no-timing",
            "--report", str(report)]
    assert main(args) == 0
    rows = _json_lines(report.read_text())
    assert "header" in rows[0] and rows[0]["header"]["seed"] == 0
    summary = rows[-1]["summary"]
    assert summary["fail"] == 0 and summary["total"] == len(rows) - 2
    first = report.read_text()
    assert main(args) == 0
    assert report.read_text() == first


def test_verify_empty_stream(tmp_path, capsys):
    report = tmp_path / "r.jsonl"
    assert main(["verify", "--suite", "claims", "--max-n", "0", "--report", str(report)]) == 0
    assert _json_lines(report.read_text())[-1]["summary"]["total"] == 0


def test_verify_to_stdout(capsys):
    assert main(["verify", "--suite", "oracle", "--max-n", "4", "--random-count", "2", "--report", "-"]) == 0
    rows = _json_lines(capsys.readouterr().out)
    assert rows[-1]["summary"]["pass"] == 1 + 1 + 2 + 6 + 4


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope", "--report", "-"])
    assert info.value.code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "c.g6"
    write_graph6_list([cycle(6)], path)
    proc = subprocess.run([sys.executable, "-m", "fvslab", "fvs", "exact", str(path)],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["size"] == 1


def test_integrity_error_exits_1(tmp_path, monkeypatch, capsys):
    from fvslab import cli
    from fvslab.errors import IntegrityError

    def broken(g, fallback_exact=False):
        raise IntegrityError("no candidate met the bound")

    monkeypatch.setattr(cli, "fvs_planar_girth5", broken)
    path = tmp_path / "c.g6"
    write_graph6_list([cycle(5)], path)
    assert main(["fvs", "construct", str(path)]) == 1
    assert "integrity" in capsys.readouterr().err
