"""Simple undirected graphs on dense integer vertices, plus text I/O.

Two text formats are understood:

* DIMACS ``.col``: ``c`` comment lines, one ``p edge N M`` header and
  ``e U V`` edge lines with 1-indexed endpoints.
* edge list: one ``U V`` pair per line, 0-indexed, ``#`` starts a comment.
  A ``# n N`` comment declares the vertex count so that trailing isolated
  vertices survive a round trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError

__all__ = [
    "Graph",
    "build_graph",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "write_graph",
]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with vertices ``0..n-1``.

    ``adjacency[u]`` is the ascending tuple of neighbors of ``u``.  Optional
    ``labels`` keep the original names of vertices read from a file.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def closed_neighborhood(self, u: int) -> frozenset[int]:
        return self._neighbor_sets[u] | {u}

    def neighbor_set(self, u: int) -> frozenset[int]:
        return self._neighbor_sets[u]

    @property
    def _neighbor_sets(self) -> tuple[frozenset[int], ...]:
        # cached lazily; the dataclass is frozen so bypass __setattr__
        try:
            return self.__dict__["_sets"]
        except KeyError:
            sets = tuple(frozenset(nb) for nb in self.adjacency)
            object.__setattr__(self, "_sets", sets)
            return sets

    def ball(self, u: int, radius: int) -> set[int]:
        """Vertices at distance at most ``radius`` from ``u``."""
        seen = {u}
        frontier = [u]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if not nxt:
                break
            frontier = nxt
        return seen

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    labels: Sequence[str] | None = None,
) -> Graph:
    """Build a simple graph on ``n`` vertices; duplicate edges collapse.

    >>> build_graph(3, [(0, 1), (1, 2)]).degrees()
    [1, 2, 1]
    """
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for edge in edges:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    if labels is not None:
        if len(labels) != n:
            raise ValueError("label table length must equal n")
        labels = tuple(str(x) for x in labels)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), labels)


_P_LINE = re.compile(r"^p\s+(\S+)\s+(\d+)\s+(\d+)\s*$")


def _parse_dimacs(lines: Iterable[str]) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        if line[0] == "p":
            m = _P_LINE.match(line)
            if m is None or n is not None:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}")
            n = int(m.group(2))
            continue
        if line[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before 'p' header")
            parts = line.split()
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed edge {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(
                    f"line {lineno}: endpoint out of range 1..{n}: {line!r}"
                )
            edges.append((u - 1, v - 1))
            continue
        raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge N M' header")
    try:
        return build_graph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


_N_COMMENT = re.compile(r"^#\s*n\s+(\d+)\s*$")


def _parse_edge_list(lines: Iterable[str]) -> Graph:
    declared = None
    tokens: list[tuple[str, str]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        m = _N_COMMENT.match(line)
        if m:
            declared = int(m.group(1))
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        tokens.append((parts[0], parts[1]))

    if all(a.isdigit() and b.isdigit() for a, b in tokens):
        edges = [(int(a), int(b)) for a, b in tokens]
        n = max((max(e) for e in edges), default=-1) + 1
        if declared is not None:
            if declared < n:
                raise GraphFormatError(f"declared n={declared} but vertex {n - 1} used")
            n = declared
        labels = None
    else:
        # arbitrary labels map to dense indices in first-seen order
        index: dict[str, int] = {}
        for pair in tokens:
            for name in pair:
                index.setdefault(name, len(index))
        edges = [(index[a], index[b]) for a, b in tokens]
        n = len(index)
        labels = list(index)
    try:
        return build_graph(n, edges, labels)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def parse_graph(text: str, format: str = "dimacs") -> Graph:
    """Parse a graph from ``text`` in ``"dimacs"`` or ``"edge-list"`` format."""
    lines = text.splitlines()
    if format in ("dimacs", "dimacs-col", "col"):
        return _parse_dimacs(lines)
    if format in ("edge-list", "edgelist", "edges"):
        return _parse_edge_list(lines)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "dimacs") -> str:
    if format in ("dimacs", "dimacs-col", "col"):
        out = [f"p edge {g.n} {g.num_edges}"]
        out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    elif format in ("edge-list", "edgelist", "edges"):
        out = [f"# n {g.n}"]
        out += [f"{u} {v}" for u, v in g.edges()]
    else:
        raise ValueError(f"unknown graph format {format!r}")
    return "\n".join(out) + "\n"


def _format_for_path(path: str) -> str:
    return "dimacs" if path.endswith((".col", ".dimacs")) else "edge-list"


def read_graph(path: str, format: str | None = None) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if format is None:
        format = _format_for_path(path)
        # sniff DIMACS content regardless of suffix
        if any(line.startswith("p ") for line in text.splitlines()):
            format = "dimacs"
    return parse_graph(text, format)


def write_graph(g: Graph, path: str, format: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_graph(g, format or _format_for_path(path)))
