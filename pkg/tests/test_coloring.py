import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import from_nx, graphs
from oracles import adjacency_sets, good_by_definition, violations_by_definition
from mac_coloring.coloring import (
    check_coloring,
    is_good,
    neighbor_sum,
    neighbor_sums,
    one_mac_check,
    parse_coloring,
    powers_init,
    serialize_coloring,
    verify,
)
from mac_coloring.errors import GraphFormatError, InvalidColoringError
from mac_coloring.graph import build_graph

P3 = build_graph(3, [(0, 1), (1, 2)])
P4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
K4 = from_nx(nx.complete_graph(4))
C4 = from_nx(nx.cycle_graph(4))
C5 = from_nx(nx.cycle_graph(5))
K13 = from_nx(nx.star_graph(3))


def report_pairs(g, c):
    return {(v.u, v.s) for v in verify(g, c)}


def test_neighbor_sum_examples():
    assert neighbor_sums(P3, [1, 1, 1]) == [1, 2, 1]
    assert neighbor_sum(K4, [1, 2, 3, 4], 0) == 9
    assert neighbor_sum(build_graph(1, []), [5], 0) == 0


def test_verify_p3_all_ones():
    report = verify(P3, [1, 1, 1])
    assert len(report) == 1
    (v,) = report
    assert (v.u, v.s, v.witnesses) == (1, 1, frozenset({0, 2}))


def test_verify_k4_distinct():
    c = [1, 2, 3, 4]
    assert neighbor_sums(K4, c) == [10 - x for x in c]
    assert verify(K4, c).ok


def test_verify_c5_example():
    c = [1, 1, 2, 1, 2]
    expected = violations_by_definition(adjacency_sets(5, list(C5.edges())), c)
    assert expected  # the example is invalid by direct computation
    assert report_pairs(C5, c) == expected


def test_report_entries_satisfy_invariants():
    rng = random.Random(3)
    for _ in range(200):
        g = from_nx(nx.gnp_random_graph(8, 0.4, seed=rng.randrange(10**6)))
        c = [rng.randint(1, 3) for _ in range(g.n)]
        sums = neighbor_sums(g, c)
        for v in verify(g, c):
            d = g.degree(v.u)
            assert d >= 2
            assert v.witnesses <= g.neighbor_set(v.u)
            assert 2 * len(v.witnesses) > d
            assert all(sums[w] == v.s for w in v.witnesses)


@settings(max_examples=300)
@given(graphs(max_n=6), st.randoms(use_true_random=False), st.integers(1, 4))
def test_verify_matches_definition(g, rnd, k):
    adj = adjacency_sets(g.n, list(g.edges()))
    c = [rnd.randint(1, k) for _ in range(g.n)]
    assert report_pairs(g, c) == violations_by_definition(adj, c)


def test_is_good_examples():
    w = is_good(C4)
    assert not w.good
    assert len(w.R) == 2 and w.R <= C4.neighbor_set(w.u)
    w = is_good(K13)
    assert not w.good and w.u == 0 and len(w.R) == 3
    assert is_good(C5).good
    assert good_by_definition(adjacency_sets(5, list(C5.edges())))


@settings(max_examples=300)
@given(graphs(max_n=7))
def test_is_good_matches_definition(g):
    w = is_good(g)
    assert w.good == good_by_definition(adjacency_sets(g.n, list(g.edges())))
    if not w.good:
        d = g.degree(w.u)
        assert 2 * len(w.R) > d > 1
        assert w.R <= g.neighbor_set(w.u)
        assert len({g.neighbors(v) for v in w.R}) == 1


@settings(max_examples=100)
@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_bad_graphs_have_no_valid_coloring(g, rnd):
    if is_good(g).good:
        assert verify(g, powers_init(g)).ok
    else:
        for _ in range(100):
            c = [rnd.randint(1, 10**6) for _ in range(g.n)]
            assert not verify(g, c).ok


def test_powers_init_examples():
    assert powers_init(C5) == [1, 2, 4, 8, 16]
    assert verify(C5, powers_init(C5)).ok
    assert powers_init(build_graph(1, [])) == [1]
    c = powers_init(P3)
    assert c == [1, 2, 4]
    assert verify(P3, c).vertices() == {1}


def test_powers_init_big_integers():
    g = from_nx(nx.cycle_graph(100))
    c = powers_init(g)
    assert c[-1] == 2**99
    assert verify(g, c).ok


def test_one_mac_examples():
    assert one_mac_check(P4)
    assert verify(P4, [1] * 4).ok
    assert not one_mac_check(K4)
    assert not one_mac_check(P3)


@given(graphs(max_n=8))
def test_one_mac_equals_all_ones_verify(g):
    assert one_mac_check(g) == verify(g, [1] * g.n).ok


def test_check_coloring():
    check_coloring(P3, [1, 2, 3])
    with pytest.raises(InvalidColoringError):
        check_coloring(P3, [1, 0, 3])
    with pytest.raises(InvalidColoringError):
        check_coloring(P3, [1, 2])


def test_coloring_io_roundtrip():
    c = [1, 2**80 + 7, 3]
    assert parse_coloring(serialize_coloring(c)) == c
    assert parse_coloring("# header\n2 5\n0 1\n1 1\n", 3) == [1, 1, 5]


@pytest.mark.parametrize("text", ["0 1\n0 2\n", "0 1\n2 1\n", "0 x\n", "0 1 2\n"])
def test_coloring_io_errors(text):
    with pytest.raises(GraphFormatError):
        parse_coloring(text, 2)


def test_exhaustive_tiny_graphs():
    # every labeled graph on 4 vertices, every coloring in [3]
    pairs = list(itertools.combinations(range(4), 2))
    for mask in range(1 << len(pairs)):
        edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
        g = build_graph(4, edges)
        adj = adjacency_sets(4, edges)
        for c in itertools.product(range(1, 4), repeat=4):
            assert report_pairs(g, c) == violations_by_definition(adj, c)
