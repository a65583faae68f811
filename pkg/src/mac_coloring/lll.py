"""Random colorings for graphs with private neighbors, by local resampling.

If every neighbor ``v`` of a vertex ``u`` (degree >= 2) has a neighbor ``w``
whose neighborhood meets ``N[u]`` only in ``v``, then the sums of the
neighbors of ``u`` reduced modulo ``k`` behave like independent uniform
residues.  With ``k = ceil(4 e^3 Delta^(4 / floor(delta/2)))`` the local lemma
promises a coloring in ``[k]`` whose residues never form a majority, and a
residue-free majority implies a sum-free one.

:func:`lll_color` finds such a coloring Moser-Tardos style: sample uniformly,
then repeatedly pick a bad vertex ``u`` and resample the colors that
determine the residues on ``N(u)``.
"""

from __future__ import annotations

import heapq
import logging
import random
from collections import Counter
from dataclasses import dataclass

import mpmath

from .coloring import Coloring, Violation, ViolationReport
from .errors import BudgetExceededError, PncViolatedError
from .graph import Graph

log = logging.getLogger(__name__)

__all__ = [
    "PncReport",
    "LllResult",
    "private_neighbor_check",
    "lll_k",
    "sample_coloring",
    "mod_sums",
    "mod_verify",
    "lll_color",
]

DEFAULT_MAX_RESAMPLES = 10**6


@dataclass(frozen=True)
class PncReport:
    satisfied: bool
    u: int | None = None
    v: int | None = None
    delta_small: int | None = None

    def __bool__(self) -> bool:
        return self.satisfied


@dataclass
class LllResult:
    coloring: list[int]
    k: int
    resamples: int


def _min_big_degree(g: Graph) -> int | None:
    return min((d for d in g.degrees() if d >= 2), default=None)


def private_neighbor_check(g: Graph) -> PncReport:
    """Check the private neighbor condition, reporting the first failing ``(u, v)``."""
    delta_small = _min_big_degree(g)
    for u, nb in enumerate(g.adjacency):
        if len(nb) < 2:
            continue
        closed = g.closed_neighborhood(u)
        for v in nb:
            if not any(g.neighbor_set(w) & closed == {v} for w in g.adjacency[v]):
                return PncReport(False, u, v, delta_small)
    return PncReport(True, delta_small=delta_small)


def lll_k(max_degree: int, delta_small: int) -> int:
    """``ceil(4 e^3 * Delta ** (4 / floor(delta / 2)))``, evaluated exactly.

    >>> lll_k(10, 4)
    8035
    """
    if max_degree < 2 or delta_small < 2:
        raise ValueError(f"need Delta >= 2 and delta >= 2, got {max_degree}, {delta_small}")
    if delta_small > max_degree:
        raise ValueError("delta cannot exceed Delta")
    half = delta_small // 2
    with mpmath.workdps(60):
        value = 4 * mpmath.e**3 * mpmath.mpf(max_degree) ** (mpmath.mpf(4) / half)
        k = int(mpmath.ceil(value))
        # the value is transcendental, but refuse to round across a near-tie
        if abs(value - mpmath.nint(value)) < mpmath.mpf(10) ** -40:
            raise ArithmeticError("ceiling too close to an integer to decide")
    return k


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def sample_coloring(g: Graph, k: int, seed=None) -> list[int]:
    """Independent uniform colors in ``1..k``; reproducible for a given seed."""
    if k < 1:
        raise ValueError("k must be positive")
    rng = _rng(seed)
    return [rng.randint(1, k) for _ in range(g.n)]


def mod_sums(g: Graph, c: Coloring, k: int) -> list[int]:
    return [sum(c[x] for x in nb) % k for nb in g.adjacency]


def _mod_violation(g: Graph, residues, u: int) -> Violation | None:
    nb = g.adjacency[u]
    d = len(nb)
    if d < 2:
        return None
    s, cnt = Counter(residues[v] for v in nb).most_common(1)[0]
    if 2 * cnt > d:
        return Violation(u, s, frozenset(v for v in nb if residues[v] == s))
    return None


def mod_verify(g: Graph, c: Coloring, k: int) -> ViolationReport:
    """Like :func:`~mac_coloring.coloring.verify` with sums taken modulo ``k``.

    Equal sums have equal residues, so an empty report here implies an empty
    plain report.
    """
    residues = mod_sums(g, c, k)
    found = (_mod_violation(g, residues, u) for u in range(g.n))
    return ViolationReport(tuple(v for v in found if v is not None))


def lll_color(
    g: Graph,
    seed=None,
    max_resamples: int = DEFAULT_MAX_RESAMPLES,
    k: int | None = None,
) -> LllResult:
    """Sample a majority additive coloring with colors in ``1..k``.

    ``k`` defaults to :func:`lll_k` of the graph.  Bad vertices are handled in
    ascending order; after a resampling at ``u`` only vertices within distance
    four of ``u`` are rechecked, since no other residue majority can change.
    """
    report = private_neighbor_check(g)
    if not report.satisfied:
        raise PncViolatedError(report)
    if report.delta_small is None:
        return LllResult([1] * g.n, k or 1, 0)
    if k is None:
        k = lll_k(g.max_degree, report.delta_small)
    rng = _rng(seed)
    c = sample_coloring(g, k, rng)
    residues = mod_sums(g, c, k)

    # variables behind the residues on N(u): colors of the neighbors of N(u)
    def event_vars(u: int) -> list[int]:
        seen = set()
        for v in g.adjacency[u]:
            seen.update(g.adjacency[v])
        return sorted(seen)

    pending = list(range(g.n))
    queued = set(pending)
    resamples = 0
    while pending:
        u = heapq.heappop(pending)
        queued.discard(u)
        if _mod_violation(g, residues, u) is None:
            continue
        if resamples >= max_resamples:
            raise BudgetExceededError(f"no valid coloring after {resamples} resamples (k={k})")
        resamples += 1
        for x in event_vars(u):
            new = rng.randint(1, k)
            diff = new - c[x]
            if diff:
                c[x] = new
                for y in g.adjacency[x]:
                    residues[y] = (residues[y] + diff) % k
        for x in g.ball(u, 4):
            if x not in queued:
                queued.add(x)
                heapq.heappush(pending, x)
    log.debug("lll_color: k=%d resamples=%d", k, resamples)
    return LllResult(c, k, resamples)
