"""Greedy recoloring from the powers-of-two coloring.

Each vertex in turn receives the smallest positive color that keeps the
coloring majority additive.  The candidate colors are not found by trial and
re-verification: changing ``c(u)`` by ``delta`` shifts the neighbor sums of
exactly the vertices in ``N(u)``, so a violation can only appear at a vertex
``w`` whose neighborhood is split into a shifted part ``A = N(u) & N(w)`` and
a fixed part ``B = N(w) - A``.  Grouping both parts by their current sums, a
violation needs one shifted group ``A_i`` to land on one fixed group ``B_j``
with ``|A_i| + |B_j| > d(w)/2``, which pins ``delta = s(B_j) - s(A_i)``.
At most ``2 * Delta * (Delta - 1)`` such values exist, which bounds every
final color by ``2 * Delta * (Delta - 1) + 1``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coloring import Coloring, is_good, neighbor_sums, powers_init, verify
from .errors import InvalidColoringError, NotGoodError
from .graph import Graph

__all__ = [
    "ForbiddenSet",
    "theorem1_bound",
    "affected_vertices",
    "forbidden_deltas",
    "greedy_recolor",
    "random_order",
]


def theorem1_bound(max_degree: int) -> int:
    """Upper bound ``2 * Delta * (Delta - 1) + 1`` on the greedy colors."""
    return 2 * max_degree * (max_degree - 1) + 1


@dataclass
class ForbiddenSet:
    """Changes of ``c(u)`` that would break validity, grouped by witness ``w``.

    ``pairs[w]`` holds the ``(A_i, B_j)`` index pairs (groups sorted by
    decreasing size) with ``|A_i| + |B_j| > d(w)/2``; ``kind[w]`` is 1 when all
    pairs share one shifted group and 2 otherwise.
    """

    u: int
    deltas: frozenset[int] = frozenset()
    by_vertex: dict[int, frozenset[int]] = field(default_factory=dict)
    pairs: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    shifted_size: dict[int, int] = field(default_factory=dict)
    kind: dict[int, int] = field(default_factory=dict)

    def __contains__(self, delta: int) -> bool:
        return delta in self.deltas

    def __len__(self) -> int:
        return len(self.deltas)

    def allowed(self, current: int, color: int) -> bool:
        return (color - current) not in self.deltas


def affected_vertices(g: Graph, u: int) -> set[int]:
    """Vertices whose neighborhood meets ``N(u)`` without being inside it."""
    nu = g.neighbor_set(u)
    out = set()
    for v in g.adjacency[u]:
        for w in g.adjacency[v]:
            if w not in out and not g.neighbor_set(w) <= nu:
                out.add(w)
    return out


def _groups(members, sums) -> list[tuple[int, int]]:
    """``(sum, size)`` groups ordered by decreasing size, then sum."""
    counts: dict[int, int] = defaultdict(int)
    for v in members:
        counts[sums[v]] += 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def forbidden_deltas(
    g: Graph,
    c: Coloring,
    u: int,
    sums: Sequence[int] | None = None,
    check: bool = True,
) -> ForbiddenSet:
    """Every ``delta`` such that ``c(u) + delta`` makes the coloring invalid.

    ``c`` must be majority additive (checked unless ``check=False``).  ``sums``
    may pass precomputed neighbor sums.
    """
    if check and not verify(g, c).ok:
        raise InvalidColoringError("forbidden_deltas needs a majority additive coloring")
    if sums is None:
        sums = neighbor_sums(g, c)
    nu = g.neighbor_set(u)
    result = ForbiddenSet(u)
    deltas: set[int] = set()
    for w in sorted(affected_vertices(g, u)):
        nw = g.adjacency[w]
        d = len(nw)
        a_groups = _groups((v for v in nw if v in nu), sums)
        b_groups = _groups((v for v in nw if v not in nu), sums)
        pairs = []
        local = set()
        for i, (sa, na) in enumerate(a_groups):
            for j, (sb, nb) in enumerate(b_groups):
                if 2 * (na + nb) <= d:
                    # groups are sorted by size, later j cannot qualify either
                    break
                pairs.append((i, j))
                local.add(sb - sa)
        if not pairs:
            continue
        result.pairs[w] = pairs
        result.by_vertex[w] = frozenset(local)
        result.shifted_size[w] = sum(na for _, na in a_groups)
        result.kind[w] = 1 if len({i for i, _ in pairs}) == 1 else 2
        deltas |= local
    result.deltas = frozenset(deltas)
    return result


def random_order(g: Graph, seed: int | random.Random | None) -> list[int]:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    return order


def greedy_recolor(
    g: Graph,
    order: Sequence[int] | None = None,
    on_progress: Callable[[int, int, list[int]], None] | None = None,
) -> list[int]:
    """Lower every color greedily, starting from the powers-of-two coloring.

    Vertices are processed in ``order`` (default ascending).  ``on_progress`` is
    called as ``on_progress(u, new_color, coloring)`` after each step.  The
    coloring stays majority additive throughout and ends with every color at
    most :func:`theorem1_bound` of the maximum degree.
    """
    witness = is_good(g)
    if not witness.good:
        raise NotGoodError(witness)
    if order is None:
        order = range(g.n)
    elif sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")

    c = powers_init(g)
    sums = neighbor_sums(g, c)
    for u in order:
        forbidden = forbidden_deltas(g, c, u, sums=sums, check=False)
        current = c[u]
        color = 1
        while (color - current) in forbidden.deltas:
            color += 1
        delta = color - current
        if delta:
            c[u] = color
            for v in g.adjacency[u]:
                sums[v] += delta
        if on_progress is not None:
            on_progress(u, color, c)
    return c
