"""Shared graph builders and hypothesis strategies for the tests."""

import random

import networkx as nx
from hypothesis import strategies as st

from mac_coloring.graph import build_graph


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return build_graph(h.number_of_nodes(), h.edges())


def edge_list(g):
    return list(g.edges())


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, keep in zip(pairs, mask) if keep])


def random_graphs(count, n_range, p_range, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(*n_range)
        p = rng.uniform(*p_range)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        yield build_graph(n, edges)


