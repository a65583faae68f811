"""Steiner triple systems, their lower-bound expansions, and random good graphs."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .coloring import is_good
from .errors import BudgetExceededError
from .graph import Graph, build_graph

__all__ = [
    "TripleSystem",
    "gen_sts",
    "bose_sts",
    "skolem_sts",
    "expand_sts",
    "expansion_roles",
    "random_graph",
    "random_good_graph",
]


@dataclass(frozen=True)
class TripleSystem:
    n: int
    blocks: tuple[tuple[int, int, int], ...]

    def pair_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for block in self.blocks:
            for a, b in itertools.combinations(sorted(block), 2):
                counts[(a, b)] = counts.get((a, b), 0) + 1
        return counts

    def is_steiner(self) -> bool:
        """Every pair of points lies in exactly one block."""
        counts = self.pair_counts()
        pairs = self.n * (self.n - 1) // 2
        return len(counts) == pairs and all(x == 1 for x in counts.values())

    def block_of(self, x: int, y: int) -> int:
        for i, block in enumerate(self.blocks):
            if x in block and y in block:
                return i
        raise KeyError((x, y))


def _finish(n: int, blocks) -> TripleSystem:
    ts = TripleSystem(n, tuple(sorted(tuple(sorted(b)) for b in blocks)))
    assert ts.is_steiner(), f"construction for n={n} is not a Steiner triple system"
    return ts


def bose_sts(n: int) -> TripleSystem:
    """Bose construction for ``n = 6t + 3``.

    Points are ``(x, i)`` with ``x`` in ``Z_m`` (``m = 2t + 1``) and ``i`` in
    ``Z_3``, indexed as ``x + m * i``.  Uses the idempotent commutative
    quasigroup ``x o y = (x + y) / 2 mod m``.
    """
    if n % 6 != 3:
        raise ValueError(f"Bose construction needs n = 3 mod 6, got {n}")
    m = n // 3
    half = (m + 1) // 2  # inverse of 2 modulo odd m

    def pt(x, i):
        return x + m * (i % 3)

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in itertools.combinations(range(m), 2):
        z = (x + y) * half % m
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(z, i + 1)))
    return _finish(n, blocks)


def skolem_sts(n: int) -> TripleSystem:
    """Skolem construction for ``n = 6t + 1``.

    Points are ``(x, i)`` with ``x`` in ``Z_2t``, ``i`` in ``Z_3`` (index
    ``x + 2t * i``) plus a point at infinity (index ``n - 1``).  Uses the
    half-idempotent commutative quasigroup obtained by relabeling the
    addition table of ``Z_2t``.
    """
    if n % 6 != 1 or n < 7:
        raise ValueError(f"Skolem construction needs n = 1 mod 6, n >= 7, got {n}")
    t = (n - 1) // 6
    m = 2 * t
    inf = n - 1

    def op(x, y):
        s = (x + y) % m
        return s // 2 if s % 2 == 0 else t + s // 2

    def pt(x, i):
        return x + m * (i % 3)

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(t)]
    for x in range(t):
        for i in range(3):
            blocks.append((inf, pt(t + x, i), pt(x, i + 1)))
    for x, y in itertools.combinations(range(m), 2):
        z = op(x, y)
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(z, i + 1)))
    return _finish(n, blocks)


def gen_sts(n: int) -> TripleSystem:
    """A Steiner triple system on ``n`` points, ``n >= 7`` and ``n = 1, 3 mod 6``."""
    if n < 7 or n % 6 not in (1, 3):
        raise ValueError(f"no Steiner triple system construction for n={n} (need n >= 7, n = 1 or 3 mod 6)")
    return bose_sts(n) if n % 6 == 3 else skolem_sts(n)


def expand_sts(ts: TripleSystem) -> Graph:
    """Replace each block by a claw hanging off its three points.

    Vertices ``0..n-1`` are the points; block ``b`` with points ``x < y < z``
    owns ``n + 4b + (0, 1, 2)`` (attached to ``x, y, z``) and the center
    ``n + 4b + 3``.  Two equal point colors inside a block give two claw
    leaves equal sums, a majority at the center.
    """
    n = ts.n
    edges = []
    for b, block in enumerate(ts.blocks):
        base = n + 4 * b
        center = base + 3
        for j, x in enumerate(block):
            edges.append((x, base + j))
            edges.append((base + j, center))
    return build_graph(n + 4 * len(ts.blocks), edges)


def expansion_roles(ts: TripleSystem) -> list[tuple]:
    """Provenance of :func:`expand_sts` vertices: ``("u", x)``, ``("v", x, b)``, ``("w", b)``."""
    roles: list[tuple] = [("u", x) for x in range(ts.n)]
    for b, block in enumerate(ts.blocks):
        roles += [("v", x, b) for x in block]
        roles.append(("w", b))
    return roles


def random_graph(n: int, p: float, seed=None) -> Graph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, edges)


def random_good_graph(n: int, p: float, seed=None, max_retries: int = 1000) -> Graph:
    """Erdos-Renyi ``G(n, p)`` resampled until it is good."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(max_retries):
        g = random_graph(n, p, rng)
        if is_good(g).good:
            return g
    raise BudgetExceededError(f"no good G({n}, {p}) in {max_retries} tries")
