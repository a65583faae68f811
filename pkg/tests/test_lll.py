import itertools
import math
import random
from decimal import Decimal, getcontext

import networkx as nx
import pytest

from helpers import from_nx, random_graphs
from oracles import adjacency_sets, private_neighbor_by_definition
from mac_coloring.coloring import verify
from mac_coloring.errors import BudgetExceededError, PncViolatedError
from mac_coloring.graph import build_graph
from mac_coloring.lll import (
    lll_color,
    lll_k,
    mod_sums,
    mod_verify,
    private_neighbor_check,
    sample_coloring,
)
from mac_coloring.reductions import subdivide3

K4 = from_nx(nx.complete_graph(4))
C7 = from_nx(nx.cycle_graph(7))
PETERSEN3, _ = subdivide3(from_nx(nx.petersen_graph()))


def k_by_decimal(max_degree, delta_small):
    getcontext().prec = 80
    e3 = Decimal(3).exp()
    value = 4 * e3 * Decimal(max_degree) ** (Decimal(4) / Decimal(delta_small // 2))
    return int(value.to_integral_value(rounding="ROUND_CEILING"))


def spider(legs, length=2):
    """A center with ``legs`` paths of ``length`` edges hanging off it."""
    edges, nxt = [], 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return build_graph(nxt, edges)


def test_pnc_examples():
    r = private_neighbor_check(K4)
    assert not r.satisfied and r.delta_small == 3
    assert K4.degree(r.u) >= 2 and r.v in K4.neighbor_set(r.u)
    r = private_neighbor_check(C7)
    assert r.satisfied and r.delta_small == 2
    r = private_neighbor_check(build_graph(2, [(0, 1)]))
    assert r.satisfied and r.delta_small is None


def test_pnc_matches_definition():
    for g in random_graphs(400, (1, 9), (0.1, 0.7), seed=21):
        adj = adjacency_sets(g.n, list(g.edges()))
        assert private_neighbor_check(g).satisfied == private_neighbor_by_definition(adj)


def test_pnc_failure_witness():
    for g in random_graphs(200, (3, 9), (0.2, 0.8), seed=8):
        r = private_neighbor_check(g)
        if r.satisfied:
            continue
        closed = g.closed_neighborhood(r.u)
        assert g.degree(r.u) >= 2 and r.v in g.neighbor_set(r.u)
        assert all(g.neighbor_set(w) & closed != {r.v} for w in g.neighbors(r.v))


@pytest.mark.parametrize("D, d, expected", [(10, 4, 8035), (2, 2, 1286), (3, 2, 6508)])
def test_lll_k_values(D, d, expected):
    assert k_by_decimal(D, d) == expected
    assert lll_k(D, d) == expected


def test_lll_k_matches_decimal_grid():
    for D in range(2, 40):
        for d in range(2, D + 1):
            assert lll_k(D, d) == k_by_decimal(D, d)


def test_lll_k_monotone():
    for D in range(2, 30):
        for d in range(2, D):
            assert lll_k(D, d + 1) <= lll_k(D, d)
            assert lll_k(D + 1, d) >= lll_k(D, d)


@pytest.mark.parametrize("D, d", [(1, 2), (2, 1), (3, 4)])
def test_lll_k_preconditions(D, d):
    with pytest.raises(ValueError):
        lll_k(D, d)


def test_sample_deterministic():
    assert sample_coloring(C7, 50, seed=3) == sample_coloring(C7, 50, seed=3)
    assert all(1 <= x <= 50 for x in sample_coloring(C7, 50, seed=3))


def test_sample_uniform():
    g = build_graph(3, [])
    rng = random.Random(99)
    draws = 10**5
    counts = [[0] * 6 for _ in range(g.n)]
    for _ in range(draws):
        for v, x in enumerate(sample_coloring(g, 5, rng)):
            counts[v][x] += 1
    sigma = math.sqrt(draws * 0.2 * 0.8)
    for v in range(g.n):
        assert counts[v][0] == 0
        for x in range(1, 6):
            assert abs(counts[v][x] - draws / 5) <= 4 * sigma


def test_mod_verify_examples():
    p3 = build_graph(3, [(0, 1), (1, 2)])
    report = mod_verify(p3, [1, 1, 1], 2)
    assert report.vertices() == {1}
    (v,) = report
    assert v.s == 1


def test_mod_verify_dominates_verify():
    rng = random.Random(4)
    checked = 0
    for g in random_graphs(300, (1, 8), (0.2, 0.8), seed=31):
        for k in (2, 3, 5, 7):
            for _ in range(5):
                c = [rng.randint(1, k) for _ in range(g.n)]
                plain = verify(g, c).vertices()
                modded = mod_verify(g, c, k).vertices()
                assert plain <= modded
                if not modded:
                    assert not plain
                checked += 1
    assert checked == 300 * 4 * 5


def test_resampling_locality():
    rng = random.Random(2)
    for g in random_graphs(60, (8, 20), (0.1, 0.3), seed=41):
        k = 4
        c = sample_coloring(g, k, rng)
        before = {v.u: v.s for v in mod_verify(g, c, k)}
        for u in g.vertices():
            c2 = list(c)
            for x in {x for v in g.neighbors(u) for x in g.neighbors(v)}:
                c2[x] = rng.randint(1, k)
            after = {v.u: v.s for v in mod_verify(g, c2, k)}
            changed = {x for x in set(before) | set(after) if before.get(x) != after.get(x)}
            assert changed <= g.ball(u, 4)


def test_tail_bound_monte_carlo():
    # every neighbor of the center owns a private leaf, so residues are independent
    g = spider(6)
    closed = g.closed_neighborhood(0)
    assert all(
        any(g.neighbor_set(w) & closed == {v} for w in g.neighbors(v)) for v in g.neighbors(0)
    )
    k, trials, d = 20, 10**5, 6
    r = d // 2 + 1
    rng = random.Random(17)
    hits = 0
    for _ in range(trials):
        c = sample_coloring(g, k, rng)
        res = mod_sums(g, c, k)
        if sum(1 for v in g.neighbors(0) if res[v] == 0) >= r:
            hits += 1
    bound = (2 * math.e / k) ** r
    assert hits / trials <= 2 * bound
    exact = sum(math.comb(d, j) * (1 / k) ** j * (1 - 1 / k) ** (d - j) for j in range(r, d + 1))
    assert exact <= bound


def test_lll_edgeless():
    res = lll_color(build_graph(5, []), seed=1)
    assert res.coloring == [1] * 5 and res.resamples == 0


def test_lll_c7():
    res = lll_color(C7, seed=0)
    assert res.k == 1286
    assert verify(C7, res.coloring).ok
    assert max(res.coloring) <= res.k


def test_lll_subdivided_petersen():
    assert private_neighbor_check(PETERSEN3).satisfied
    assert (PETERSEN3.max_degree, private_neighbor_check(PETERSEN3).delta_small) == (3, 2)
    res = lll_color(PETERSEN3, seed=5)
    assert res.k == 6508
    assert verify(PETERSEN3, res.coloring).ok


def test_lll_small_k_override_resamples():
    total = 0
    for seed in range(20):
        res = lll_color(C7, seed=seed, k=5)
        assert max(res.coloring) <= 5
        assert mod_verify(C7, res.coloring, 5).ok
        assert verify(C7, res.coloring).ok
        total += res.resamples
    assert total > 0


def test_lll_deterministic():
    a = lll_color(PETERSEN3, seed=11, k=7)
    b = lll_color(PETERSEN3, seed=11, k=7)
    assert a.coloring == b.coloring and a.resamples == b.resamples


def test_lll_rejects_pnc_failure():
    with pytest.raises(PncViolatedError):
        lll_color(K4, seed=0)


def test_lll_budget():
    with pytest.raises(BudgetExceededError):
        lll_color(C7, seed=0, k=1, max_resamples=10)


def test_lll_exhaustive_small_k():
    # every C5 coloring with three colors: ones without residue majorities are valid
    c5 = from_nx(nx.cycle_graph(5))
    for c in itertools.product(range(1, 4), repeat=5):
        if mod_verify(c5, c, 3).ok:
            assert verify(c5, c).ok
