"""Exact decision of ``k``-MAC and the majority additive chromatic number.

The search assigns colors ``1..k`` vertex by vertex.  A neighbor sum is
*complete* once every vertex it counts is colored; a branch dies as soon as
more than half the neighbors of some vertex carry one complete sum.
Incomplete sums never prune, because they can still diverge.

Dead ends are explained so the search can jump back over irrelevant
vertices (conflict-directed backjumping).  Whether ``s(v) == s(v')`` holds
depends only on the colors in the symmetric difference of ``N(v)`` and
``N(v')``, which keeps explanations small: in a subdivided edge
``u - x - y - x' - v`` the collision at ``y`` is explained by ``{u, v}``
alone.

No color-symmetry reduction is used.  Permuting colors changes the sums and
does not preserve validity.
"""

from __future__ import annotations

import itertools
import logging
import sys
from collections import defaultdict
from dataclasses import dataclass, field

from .coloring import is_good, one_mac_check, verify
from .errors import BudgetExceededError, NotGoodError
from .graph import Graph

log = logging.getLogger(__name__)

__all__ = [
    "SearchOutcome",
    "ChiResult",
    "search_order",
    "decide_kmac",
    "chi_mac",
    "chi_mac_search",
    "brute_force_oracle",
]

DEFAULT_BUDGET = 10**8
ORACLE_LIMIT = 10**8

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass
class SearchOutcome:
    verdict: str
    coloring: list[int] | None = None
    nodes_explored: int = 0
    budget_hit: bool = False

    @property
    def yes(self) -> bool:
        return self.verdict == YES


@dataclass
class ChiResult:
    chi: int
    coloring: list[int]
    nodes_explored: int = 0
    outcomes: dict[int, str] = field(default_factory=dict)


def search_order(g: Graph) -> list[int]:
    """Maximum-cardinality order on the "shares a neighbor" relation.

    Vertices counted by a common neighbor sum are placed close together so
    sums complete early.  Each component starts at its highest-degree
    vertex; ties go to the smaller index.
    """
    co = [set() for _ in range(g.n)]
    for nb in g.adjacency:
        for a in nb:
            co[a].update(nb)
    for a in range(g.n):
        co[a].discard(a)

    order: list[int] = []
    placed = [False] * g.n
    weight = [0] * g.n
    degrees = g.degrees()
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if placed[v]:
                continue
            if best < 0 or (weight[v], degrees[v]) > (weight[best], degrees[best]):
                best = v
        placed[best] = True
        order.append(best)
        for w in co[best]:
            if not placed[w]:
                weight[w] += 1
    return order


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, k: int, budget: int):
        self.g = g
        self.k = k
        self.budget = budget
        self.nodes = 0
        self.order = search_order(g)
        self.pos = [0] * g.n
        for i, v in enumerate(self.order):
            self.pos[v] = i
        self.color = [0] * g.n
        self.psum = [0] * g.n
        self.missing = g.degrees()
        # per vertex w: complete neighbor sum -> list of neighbors having it
        self.complete: list[dict[int, list[int]]] = [defaultdict(list) for _ in range(g.n)]
        self._diff_cache: dict[tuple[int, int], set[int]] = {}

    def _diff_positions(self, a: int, b: int) -> set[int]:
        key = (a, b) if a < b else (b, a)
        cached = self._diff_cache.get(key)
        if cached is None:
            na, nb = self.g.neighbor_set(a), self.g.neighbor_set(b)
            cached = {self.pos[x] for x in na ^ nb}
            self._diff_cache[key] = cached
        return cached

    def _explain(self, w: int, v: int, group: list[int]) -> set[int]:
        need = len(self.g.adjacency[w]) // 2  # partners besides v
        others = [x for x in group if x != v]
        others.sort(key=lambda x: max(self._diff_positions(v, x), default=-1))
        expl: set[int] = set()
        for x in others[:need]:
            expl |= self._diff_positions(v, x)
        return expl

    def _assign(self, x: int, c: int) -> set[int] | None:
        """Color ``x``; return an explanation if a majority appears."""
        g = self.g
        self.color[x] = c
        conflict = None
        for v in g.adjacency[x]:
            self.psum[v] += c
            self.missing[v] -= 1
            if self.missing[v]:
                continue
            s = self.psum[v]
            for w in g.adjacency[v]:
                group = self.complete[w][s]
                group.append(v)
                d = len(g.adjacency[w])
                if conflict is None and d >= 2 and 2 * len(group) > d:
                    conflict = self._explain(w, v, group)
        return conflict

    def _unassign(self, x: int) -> None:
        g = self.g
        c = self.color[x]
        for v in g.adjacency[x]:
            if not self.missing[v]:
                s = self.psum[v]
                for w in g.adjacency[v]:
                    group = self.complete[w][s]
                    group.pop()
                    if not group:
                        del self.complete[w][s]
            self.psum[v] -= c
            self.missing[v] += 1
        self.color[x] = 0

    def run(self, i: int):
        """``True`` on success, otherwise the set of order positions to blame."""
        if i == len(self.order):
            return True
        x = self.order[i]
        blame: set[int] = set()
        for c in range(1, self.k + 1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            conflict = self._assign(x, c)
            if conflict is None:
                res = self.run(i + 1)
                if res is True:
                    return True
                conflict = res
            self._unassign(x)
            if i not in conflict:
                # this vertex plays no part; every other color fails too
                return conflict
            blame |= conflict
            blame.discard(i)
        return blame


def decide_kmac(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Decide whether ``g`` has a majority additive coloring with colors ``1..k``.

    ``budget`` caps the number of search-tree nodes; when it runs out the
    verdict is ``"unknown"``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not is_good(g).good:
        return SearchOutcome(NO)
    search = _Search(g, k, budget)
    limit = sys.getrecursionlimit()
    if g.n + 100 > limit:
        sys.setrecursionlimit(g.n + 1000)
    try:
        result = search.run(0)
    except _Budget:
        return SearchOutcome(UNKNOWN, nodes_explored=search.nodes - 1, budget_hit=True)
    finally:
        sys.setrecursionlimit(limit)
    if result is True:
        coloring = list(search.color)
        assert verify(g, coloring).ok, "search produced an invalid coloring"
        return SearchOutcome(YES, coloring, search.nodes)
    return SearchOutcome(NO, nodes_explored=search.nodes)


def chi_mac_search(g: Graph, budget: int = DEFAULT_BUDGET) -> ChiResult:
    """Smallest ``k`` admitting a majority additive ``k``-coloring, with a witness.

    The greedy coloring supplies an upper bound, so only smaller values of
    ``k`` are searched.  Raises :class:`NotGoodError` on graphs that are not
    good and :class:`BudgetExceededError` when a search is inconclusive.
    """
    from .greedy import greedy_recolor

    witness = is_good(g)
    if not witness.good:
        raise NotGoodError(witness)
    if one_mac_check(g):
        return ChiResult(1, [1] * g.n, 0, {1: YES})
    upper = greedy_recolor(g)
    top = max(upper)
    nodes = 0
    outcomes = {1: NO}
    for k in range(2, top):
        out = decide_kmac(g, k, budget)
        nodes += out.nodes_explored
        outcomes[k] = out.verdict
        log.debug("k=%d: %s after %d nodes", k, out.verdict, out.nodes_explored)
        if out.verdict == YES:
            return ChiResult(k, out.coloring, nodes, outcomes)
        if out.verdict == UNKNOWN:
            raise BudgetExceededError(f"search for k={k} exceeded {budget} nodes")
    outcomes[top] = YES
    return ChiResult(top, upper, nodes, outcomes)


def chi_mac(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    return chi_mac_search(g, budget).chi


def brute_force_oracle(g: Graph, k: int) -> bool:
    """Try all ``k ** n`` colorings against :func:`verify`."""
    if k ** g.n > ORACLE_LIMIT:
        raise ValueError(f"{k}**{g.n} colorings exceed the oracle limit")
    for c in itertools.product(range(1, k + 1), repeat=g.n):
        if verify(g, c).ok:
            return True
    return False
