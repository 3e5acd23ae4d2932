import pytest
from hypothesis import given

from fvslab.errors import DomainError
from fvslab.formats import (
    from_adjacency_text,
    from_graph6,
    parse_graphs,
    read_graph_file,
    to_adjacency_text,
    to_graph6,
    write_graph6_list,
)
from fvslab.graph import Graph
from helpers import complete, multigraphs, simple_graphs


def test_known_graph6_strings():
    assert to_graph6(complete(4)) == "C~"
    assert from_graph6(">>graph6<<C~") == complete(4)
    petersen = from_graph6("IheA@GUAo")
    assert (petersen.n, petersen.m) == (10, 15)


def test_graph6_rejects_multigraphs_and_garbage():
    with pytest.raises(DomainError):
        to_graph6(Graph([0, 1], [(0, 1), (0, 1)]))
    with pytest.raises(DomainError):
        from_graph6("C")


@given(simple_graphs(min_n=1))
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)) == g.compact()[0]


@given(multigraphs())
def test_adjacency_round_trip(g):
    assert from_adjacency_text(to_adjacency_text(g)) == g.compact()[0]


def test_adjacency_errors():
    with pytest.raises(DomainError):
        from_adjacency_text("3 2\n0 1\n")
    with pytest.raises(DomainError):
        from_adjacency_text("2 1\n0 5\n")
    with pytest.raises(DomainError):
        from_adjacency_text("0 1 2\n")


def test_parse_graphs_detects_format():
    assert parse_graphs("# loop\n1 1\n0 0\n") == [Graph([0], [(0, 0)])]
    assert len(parse_graphs("C~\nBw\n")) == 2
    assert parse_graphs("\n") == []


def test_files(tmp_path):
    path = tmp_path / "g.g6"
    write_graph6_list([complete(3), complete(4)], path)
    assert read_graph_file(path) == [complete(3), complete(4)]
    empty = tmp_path / "e.g6"
    empty.write_text("")
    with pytest.raises(DomainError):
        read_graph_file(empty)
