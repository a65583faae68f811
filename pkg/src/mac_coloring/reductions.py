"""Hardness gadgets: NAE-3SAT to 2-MAC and graph k-coloring to k-MAC.

Both constructions keep a :class:`ProvenanceMap` naming the role of every
gadget vertex, so witnesses can be carried across in both directions.
Literals are signed 1-indexed variables as in DIMACS; an assignment is a
tuple of booleans with ``mu[x - 1]`` the value of variable ``x``.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coloring import Coloring, verify
from .errors import BudgetExceededError, GraphFormatError, InvalidColoringError
from .graph import Graph, build_graph

__all__ = [
    "NaeFormula",
    "ProvenanceMap",
    "parse_nae_cnf",
    "serialize_nae_cnf",
    "nae_satisfies",
    "nae_brute",
    "nae_to_mac2",
    "assignment_to_coloring",
    "coloring_to_assignment",
    "subdivide3",
    "majority_3_edge_coloring",
    "is_majority_edge_coloring",
    "kcoloring_to_mac",
    "restrict_to_original",
    "is_proper",
]

NAE_BRUTE_LIMIT = 10**7


@dataclass(frozen=True)
class NaeFormula:
    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for j, clause in enumerate(clauses):
            if len(clause) != 3:
                raise ValueError(f"clause {j} has {len(clause)} literals, expected 3")
            if len(set(clause)) != 3:
                raise ValueError(f"clause {j} repeats a literal: {clause}")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"clause {j}: literal {lit} out of range")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> Counter:
        """``d_l``: number of clauses containing each literal."""
        return Counter(lit for clause in self.clauses for lit in clause)


def _literal_value(lit: int, mu: Sequence[bool]) -> bool:
    return mu[abs(lit) - 1] if lit > 0 else not mu[abs(lit) - 1]


def nae_satisfies(f: NaeFormula, mu: Sequence[bool]) -> bool:
    """Every clause has a true and a false literal under ``mu``."""
    for clause in f.clauses:
        values = {_literal_value(lit, mu) for lit in clause}
        if len(values) != 2:
            return False
    return True


def nae_brute(f: NaeFormula) -> tuple[bool, ...] | None:
    """First NAE-satisfying assignment in lexicographic order, or ``None``."""
    if 2**f.n_vars > NAE_BRUTE_LIMIT:
        raise ValueError(f"2**{f.n_vars} assignments exceed the enumeration limit")
    for mu in itertools.product((True, False), repeat=f.n_vars):
        if nae_satisfies(f, mu):
            return mu
    return None


def parse_nae_cnf(text: str) -> NaeFormula:
    """Read DIMACS CNF with 3-literal clauses, interpreted with NAE semantics."""
    n_vars = None
    declared_m = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or n_vars is not None:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}")
            try:
                n_vars, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if n_vars is None:
            raise GraphFormatError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer literal in {line!r}") from None
    if n_vars is None:
        raise GraphFormatError("missing 'p cnf N M' header")
    clauses = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(t)
    if current:
        raise GraphFormatError("last clause is not terminated by 0")
    if declared_m is not None and declared_m != len(clauses):
        raise GraphFormatError(f"header declares {declared_m} clauses, found {len(clauses)}")
    try:
        return NaeFormula(n_vars, tuple(clauses))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def serialize_nae_cnf(f: NaeFormula) -> str:
    lines = ["c nae-3sat", f"p cnf {f.n_vars} {f.m}"]
    lines += [" ".join(map(str, clause)) + " 0" for clause in f.clauses]
    return "\n".join(lines) + "\n"


@dataclass
class ProvenanceMap:
    """Role tuple for every gadget vertex, e.g. ``("v_lit", -3)`` or ``("y", 0, 4)``."""

    roles: list[tuple]
    index: dict[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {role: v for v, role in enumerate(self.roles)}
        if len(self.index) != len(self.roles):
            raise ValueError("roles must be distinct")

    def __len__(self) -> int:
        return len(self.roles)

    def __getitem__(self, role: tuple) -> int:
        return self.index[role]

    def role(self, v: int) -> tuple:
        return self.roles[v]

    def to_json(self) -> str:
        rows = [{"vertex": v, "role": r[0], "args": list(r[1:])} for v, r in enumerate(self.roles)]
        return json.dumps({"vertices": rows}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> ProvenanceMap:
        rows = sorted(json.loads(text)["vertices"], key=lambda r: r["vertex"])
        if [r["vertex"] for r in rows] != list(range(len(rows))):
            raise GraphFormatError("provenance map must cover vertices 0..n-1")
        return cls([(r["role"], *r["args"]) for r in rows])


class _Builder:
    def __init__(self):
        self.roles: list[tuple] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, *role) -> int:
        self.roles.append(tuple(role))
        return len(self.roles) - 1

    def path(self, *vertices: int) -> None:
        self.edges += list(zip(vertices, vertices[1:]))

    def build(self) -> tuple[Graph, ProvenanceMap]:
        return build_graph(len(self.roles), self.edges), ProvenanceMap(self.roles)


def nae_to_mac2(f: NaeFormula) -> tuple[Graph, ProvenanceMap]:
    """Gadget graph with a majority additive 2-coloring iff ``f`` is NAE-satisfiable.

    Per variable ``x``: the path ``v_x a_x b_x a_-x v_-x`` and, for each literal
    ``l`` of ``x``, ``d_l + 3`` pendant paths ``v_l beta alpha``.  Per clause
    ``C``: the path ``v_C beta_C alpha_C`` and a vertex ``v_l^C`` adjacent to
    ``v_l`` and ``v_C`` for each literal ``l`` of ``C``.
    """
    occ = f.occurrences()
    b = _Builder()
    for x in range(1, f.n_vars + 1):
        vx, ax = b.add("v_lit", x), b.add("a_lit", x)
        bx = b.add("b_var", x)
        anx, vnx = b.add("a_lit", -x), b.add("v_lit", -x)
        b.path(vx, ax, bx, anx, vnx)
        for lit, v_lit in ((x, vx), (-x, vnx)):
            for i in range(1, occ[lit] + 4):
                alpha, beta = b.add("alpha", lit, i), b.add("beta", lit, i)
                b.path(alpha, beta, v_lit)
    lit_vertex = {role[1]: v for v, role in enumerate(b.roles) if role[0] == "v_lit"}
    for j, clause in enumerate(f.clauses):
        vc = b.add("v_clause", j)
        b.path(vc, b.add("beta_clause", j), b.add("alpha_clause", j))
        for lit in clause:
            b.path(lit_vertex[lit], b.add("v_occ", lit, j), vc)
    return b.build()


def assignment_to_coloring(
    f: NaeFormula, mu: Sequence[bool], pmap: ProvenanceMap, check: bool = True
) -> list[int]:
    """Colors in ``{1, 2}`` for the gadget, valid when ``mu`` NAE-satisfies ``f``.

    ``v_l`` gets 1 for true literals and 2 for false ones, ``alpha_1^l`` gets 1
    and the other ``alpha_i^l`` get 2, ``alpha_C`` gets 2 exactly when two
    literals of ``C`` are true; everything else is 1.
    """
    if len(mu) != f.n_vars:
        raise ValueError("assignment length must equal the number of variables")
    if check and not nae_satisfies(f, mu):
        raise InvalidColoringError("assignment does not NAE-satisfy the formula")
    c = [1] * len(pmap)
    for v, role in enumerate(pmap.roles):
        kind = role[0]
        if kind == "v_lit":
            c[v] = 1 if _literal_value(role[1], mu) else 2
        elif kind == "alpha":
            c[v] = 1 if role[2] == 1 else 2
        elif kind == "alpha_clause":
            true_count = sum(_literal_value(lit, mu) for lit in f.clauses[role[1]])
            c[v] = 2 if true_count == 2 else 1
    return c


def coloring_to_assignment(
    g: Graph, pmap: ProvenanceMap, c: Coloring, check: bool = True
) -> tuple[bool, ...]:
    """Read ``x = (c(v_x) == 1)`` off a majority additive 2-coloring of the gadget."""
    if check:
        if any(x not in (1, 2) for x in c):
            raise InvalidColoringError("expected a coloring with colors 1 and 2")
        if not verify(g, c).ok:
            raise InvalidColoringError("coloring is not majority additive")
    n_vars = sum(1 for role in pmap.roles if role[0] == "b_var")
    return tuple(c[pmap[("v_lit", x)]] == 1 for x in range(1, n_vars + 1))


def subdivide3(g: Graph) -> tuple[Graph, ProvenanceMap]:
    """Replace every edge ``uv`` by the path ``u x_u y x_v v``.

    Originals keep their indices; edge number ``e`` (in sorted order) owns
    ``n + 3e + (0, 1, 2)`` for ``x_u, y, x_v``.
    """
    b = _Builder()
    for u in range(g.n):
        b.add("original", u)
    for u, v in g.edges():
        xu, y, xv = b.add("x", u, v, u), b.add("y", u, v), b.add("x", u, v, v)
        b.path(u, xu, y, xv, v)
    return b.build()


def _cap_exceeded(count: int, d: int) -> bool:
    # at most half the incident edges per color; a single edge is allowed
    return 2 * count > max(d, 2)


def is_majority_edge_coloring(g: Graph, colors: Mapping[tuple[int, int], int]) -> bool:
    """No vertex of degree >= 2 has more than half its edges in one color."""
    for u, nb in enumerate(g.adjacency):
        counts = Counter(colors[(min(u, v), max(u, v))] for v in nb)
        if counts and _cap_exceeded(max(counts.values()), len(nb)):
            return False
    return True


def majority_3_edge_coloring(
    g: Graph,
    seed=None,
    max_iters: int = 200_000,
    restart_every: int = 5_000,
    noise: float = 0.1,
) -> dict[tuple[int, int], int]:
    """Edge colors in ``{1, 2, 3}`` with every color on at most half the edges at each vertex.

    Local search: while a vertex has too many edges of one color, move one of
    those edges to the color that leaves its two endpoints least overloaded,
    with occasional random moves and periodic restarts.  Vertices of degree 1
    are exempt.  Existence is only guaranteed for minimum degree at least 4.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    edges = list(g.edges())
    deg = g.degrees()
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)

    iters = 0
    while True:
        col = [rng.randint(1, 3) for _ in edges]
        cnt = [[0, 0, 0, 0] for _ in range(g.n)]
        for i, (u, v) in enumerate(edges):
            cnt[u][col[i]] += 1
            cnt[v][col[i]] += 1

        def excess(u: int, a: int) -> int:
            return max(0, 2 * cnt[u][a] - max(deg[u], 2))

        for _ in range(restart_every):
            bad = [u for u in range(g.n) if any(excess(u, a) for a in (1, 2, 3))]
            if not bad:
                result = {e: col[i] for i, e in enumerate(edges)}
                assert is_majority_edge_coloring(g, result)
                return result
            iters += 1
            if iters > max_iters:
                raise BudgetExceededError(f"no majority 3-edge-coloring after {max_iters} moves")
            u = rng.choice(bad)
            a = rng.choice([a for a in (1, 2, 3) if excess(u, a)])
            i = rng.choice([i for i in incident[u] if col[i] == a])
            x, y = edges[i]
            cnt[x][a] -= 1
            cnt[y][a] -= 1
            choices = [b for b in (1, 2, 3) if b != a]
            if rng.random() < noise:
                b = rng.choice(choices)
            else:
                rng.shuffle(choices)
                b = min(choices, key=lambda b: excess(x, b) + excess(y, b)
                        + (2 * (cnt[x][b] + 1) > max(deg[x], 2))
                        + (2 * (cnt[y][b] + 1) > max(deg[y], 2)))
            col[i] = b
            cnt[x][b] += 1
            cnt[y][b] += 1


def is_proper(g: Graph, c: Coloring) -> bool:
    return all(c[u] != c[v] for u, v in g.edges())


def kcoloring_to_mac(
    g: Graph,
    c1: Coloring,
    c2: Mapping[tuple[int, int], int],
    pmap: ProvenanceMap,
    k: int | None = None,
    check: bool = True,
) -> list[int]:
    """Lift a proper ``k``-coloring of ``g`` to the triple subdivision.

    Originals keep ``c1``, each middle vertex ``y`` takes the edge color
    ``c2(e)``, and every other subdivision vertex gets 1.  Needs minimum
    degree at least 4 and ``k >= 3``; ``check=False`` skips the properness
    test on ``c1``.
    """
    if k is None:
        k = max(c1, default=1)
    if k < 3:
        raise ValueError("the lifting needs k >= 3")
    if g.n and g.min_degree < 4:
        raise ValueError(f"the lifting needs minimum degree >= 4, got {g.min_degree}")
    if len(c1) != g.n or any(not 1 <= x <= k for x in c1):
        raise InvalidColoringError(f"c1 must assign colors in 1..{k} to all {g.n} vertices")
    if check and not is_proper(g, c1):
        raise InvalidColoringError("c1 is not a proper coloring")
    if not is_majority_edge_coloring(g, c2) or any(x not in (1, 2, 3) for x in c2.values()):
        raise InvalidColoringError("c2 is not a majority 3-edge-coloring")
    c = [1] * len(pmap)
    for v, role in enumerate(pmap.roles):
        if role[0] == "original":
            c[v] = c1[role[1]]
        elif role[0] == "y":
            c[v] = c2[(role[1], role[2])]
    return c


def restrict_to_original(pmap: ProvenanceMap, c: Coloring) -> list[int]:
    """Colors of the original vertices of a subdivided graph."""
    originals = sorted((role[1], v) for v, role in enumerate(pmap.roles) if role[0] == "original")
    return [c[v] for _, v in originals]
