"""Neighbor sums, the majority additive verifier and the goodness test.

A coloring is any sequence of positive Python ints indexed by vertex.  Python
ints are unbounded, so the powers-of-two coloring and the intermediate states
of the greedy procedure need no special handling.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GraphFormatError, InvalidColoringError
from .graph import Graph

Coloring = Sequence[int]

__all__ = [
    "Coloring",
    "Violation",
    "ViolationReport",
    "GoodnessWitness",
    "check_coloring",
    "neighbor_sum",
    "neighbor_sums",
    "verify",
    "is_majority_additive",
    "is_good",
    "powers_init",
    "one_mac_check",
    "parse_coloring",
    "serialize_coloring",
]


@dataclass(frozen=True)
class Violation:
    """More than half the neighbors ``witnesses`` of ``u`` have neighbor sum ``s``."""

    u: int
    s: int
    witnesses: frozenset[int]


@dataclass(frozen=True)
class ViolationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        # truthy when something is wrong, like a non-empty list
        return bool(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def at(self, u: int) -> list[Violation]:
        return [v for v in self.violations if v.u == u]

    def vertices(self) -> set[int]:
        return {v.u for v in self.violations}


@dataclass(frozen=True)
class GoodnessWitness:
    """``good`` is True, or ``(u, R)`` certifies that the graph is not good."""

    good: bool
    u: int | None = None
    R: frozenset[int] = field(default_factory=frozenset)

    def __bool__(self) -> bool:
        return self.good


def check_coloring(g: Graph, c: Coloring) -> None:
    """Raise :class:`InvalidColoringError` unless ``c`` assigns a color >= 1 to each vertex."""
    if len(c) != g.n:
        raise InvalidColoringError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    for v, x in enumerate(c):
        if x < 1:
            raise InvalidColoringError(f"vertex {v} has non-positive color {x}")


def neighbor_sum(g: Graph, c: Coloring, v: int) -> int:
    return sum(c[x] for x in g.adjacency[v])


def neighbor_sums(g: Graph, c: Coloring) -> list[int]:
    return [sum(c[x] for x in nb) for nb in g.adjacency]


def _majority_groups(g: Graph, values: Sequence[int]) -> list[Violation]:
    found = []
    for u, nb in enumerate(g.adjacency):
        d = len(nb)
        if d < 2:
            continue
        counts: dict[int, int] = {}
        for v in nb:
            s = values[v]
            counts[s] = counts.get(s, 0) + 1
        if 2 * len(counts) > d + 1:
            # too many distinct values for any of them to cover a majority
            continue
        for s, cnt in counts.items():
            if 2 * cnt > d:
                found.append(Violation(u, s, frozenset(v for v in nb if values[v] == s)))
                break
    return found


def verify(g: Graph, c: Coloring) -> ViolationReport:
    """Report every vertex of degree >= 2 whose neighbors have a majority sum.

    At most one sum value can cover more than half of a neighborhood, so the
    report has at most one entry per vertex.
    """
    return ViolationReport(tuple(_majority_groups(g, neighbor_sums(g, c))))


def is_majority_additive(g: Graph, c: Coloring) -> bool:
    return verify(g, c).ok


def is_good(g: Graph) -> GoodnessWitness:
    """Test whether some majority additive coloring exists.

    A vertex ``u`` of degree at least 2 is an obstruction when more than half
    of its neighbors share one open neighborhood; their sums agree under every
    coloring.  Neighborhoods are compared through their sorted tuples.
    """
    for u, nb in enumerate(g.adjacency):
        d = len(nb)
        if d < 2:
            continue
        groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for v in nb:
            groups[g.adjacency[v]].append(v)
        largest = max(groups.values(), key=len)
        if 2 * len(largest) > d:
            return GoodnessWitness(False, u, frozenset(largest))
    return GoodnessWitness(True)


def powers_init(g: Graph) -> list[int]:
    """The universal coloring ``c(v) = 2**v``; valid whenever ``g`` is good."""
    return [1 << i for i in range(g.n)]


def one_mac_check(g: Graph) -> bool:
    """True iff the all-ones coloring is majority additive.

    Under the all-ones coloring every neighbor sum is a degree, so this asks
    whether some vertex has more than half its neighbors of equal degree.
    """
    return not _majority_groups(g, g.degrees())


def parse_coloring(text: str, n: int | None = None) -> list[int]:
    """Parse ``vertex color`` lines (0-indexed, ``#`` comments)."""
    entries: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'vertex color', got {raw!r}")
        try:
            v, x = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer entry {raw!r}") from None
        if v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex index")
        if v in entries:
            raise GraphFormatError(f"line {lineno}: vertex {v} colored twice")
        entries[v] = x
    size = n if n is not None else (max(entries) + 1 if entries else 0)
    missing = [v for v in range(size) if v not in entries]
    if missing:
        raise GraphFormatError(f"no color for vertices {missing[:10]}")
    extra = [v for v in entries if v >= size]
    if extra:
        raise GraphFormatError(f"vertex {extra[0]} out of range for n={size}")
    return [entries[v] for v in range(size)]


def serialize_coloring(c: Coloring) -> str:
    return "".join(f"{v} {x}\n" for v, x in enumerate(c))
