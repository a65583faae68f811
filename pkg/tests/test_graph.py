import pytest
from hypothesis import given

from helpers import graphs
from mac_coloring.errors import GraphFormatError
from mac_coloring.graph import build_graph, parse_graph, read_graph, serialize_graph, write_graph


def test_build_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.degrees() == [1, 2, 1]
    assert g.adjacency == ((1,), (0, 2), (1,))
    assert g.num_edges == 2


def test_build_complete():
    g = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert g.max_degree == g.min_degree == 3


def test_self_loop_rejected():
    with pytest.raises(ValueError, match="self-loop"):
        build_graph(2, [(0, 0)])


def test_out_of_range_rejected():
    with pytest.raises(ValueError, match="out of range"):
        build_graph(2, [(0, 2)])


def test_duplicates_collapse():
    g = build_graph(3, [(0, 1), (1, 0), (1, 2), (1, 2)])
    assert g.num_edges == 2


def test_empty_graph():
    g = build_graph(0, [])
    assert g.max_degree == 0 and g.min_degree == 0 and list(g.edges()) == []


def test_parse_dimacs():
    g = parse_graph("c a path\np edge 3 2\ne 1 2\ne 2 3\n", "dimacs")
    assert g == build_graph(3, [(0, 1), (1, 2)])


def test_parse_edge_list_dedup():
    g = parse_graph("0 1\n1 2\n1 2\n", "edge-list")
    assert g == build_graph(3, [(0, 1), (1, 2)])


def test_parse_edge_list_comments_and_declared_n():
    g = parse_graph("# n 5\n0 1 # first edge\n\n# note\n", "edge-list")
    assert g.n == 5 and g.num_edges == 1


def test_parse_edge_list_labels():
    g = parse_graph("a b\nb c\n", "edge-list")
    assert g.labels == ("a", "b", "c")
    assert g.degrees() == [1, 2, 1]


@pytest.mark.parametrize(
    "text",
    [
        "p edge 2 1\ne 1 3\n",
        "p edge 2\ne 1 2\n",
        "e 1 2\n",
        "p edge 2 1\np edge 2 1\n",
        "p edge 2 1\nx 1 2\n",
        "p edge 2 1\ne 1\n",
        "",
    ],
)
def test_parse_dimacs_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text, "dimacs")


def test_parse_edge_list_errors():
    with pytest.raises(GraphFormatError):
        parse_graph("0 1 2\n", "edge-list")
    with pytest.raises(GraphFormatError):
        parse_graph("0 0\n", "edge-list")
    with pytest.raises(GraphFormatError):
        parse_graph("# n 2\n0 4\n", "edge-list")


@given(graphs(max_n=9))
def test_roundtrip(g):
    for fmt in ("dimacs", "edge-list"):
        assert parse_graph(serialize_graph(g, fmt), fmt) == g


@given(graphs(max_n=9))
def test_handshake_and_symmetry(g):
    assert sum(g.degrees()) == 2 * g.num_edges
    for u in g.vertices():
        assert list(g.neighbors(u)) == sorted(set(g.neighbors(u)))
        assert u not in g.neighbors(u)
        for v in g.neighbors(u):
            assert u in g.neighbors(v)


def test_file_roundtrip(tmp_path):
    g = build_graph(5, [(0, 1), (1, 2), (3, 4)])
    for name in ("g.col", "g.txt"):
        path = str(tmp_path / name)
        write_graph(g, path)
        assert read_graph(path) == g


def test_ball():
    g = build_graph(6, [(i, i + 1) for i in range(5)])
    assert g.ball(0, 2) == {0, 1, 2}
    assert g.ball(3, 10) == set(range(6))
