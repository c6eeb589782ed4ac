"""Graph representations, degree statistics, peeling, and half-regularization.

Vertices are integer ids. Input files use dense ids 0..n-1; subgraph
operations keep the original ids so that containment (H is a subgraph
of G) stays directly checkable. All values are immutable after
construction and all operations are pure functions.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyGraphError, ParseError, PreconditionViolated


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on an explicit vertex set."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    _adj: dict = field(default=None, repr=False, compare=False)

    @staticmethod
    def build(vertices, edges) -> "Graph":
        vset = sorted(set(vertices))
        eset = set()
        for u, v in edges:
            if u == v:
                raise ParseError(f"self-loop at {u}")
            eset.add(_norm_edge(u, v))
        vs = set(vset)
        for u, v in eset:
            if u not in vs or v not in vs:
                raise ParseError(f"edge ({u},{v}) leaves the vertex set")
        return Graph(tuple(vset), frozenset(eset))

    @property
    def adj(self) -> dict[int, tuple[int, ...]]:
        if self._adj is None:
            a = {v: [] for v in self.vertices}
            for u, v in self.edges:
                a[u].append(v)
                a[v].append(u)
            object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in a.items()})
        return self._adj

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def min_degree(self) -> int:
        return min((len(ns) for ns in self.adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adj.values()), default=0)

    def avg_degree(self) -> Fraction:
        if self.n == 0:
            raise EmptyGraphError("average degree of an empty graph")
        return Fraction(2 * self.e, self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def induced(self, vertices) -> "Graph":
        keep = set(vertices)
        edges = frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        return Graph(tuple(sorted(keep)), edges)

    def without_edges(self, edges) -> "Graph":
        drop = {_norm_edge(u, v) for u, v in edges}
        return Graph(self.vertices, self.edges - drop)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return set(self.vertices) <= set(other.vertices) and self.edges <= other.edges


@dataclass(frozen=True)
class BipartiteGraph:
    """Graph with an ordered part pair (M, N); every edge crosses parts."""

    graph: Graph
    part_m: frozenset[int]
    part_n: frozenset[int]

    @staticmethod
    def build(part_m, part_n, edges) -> "BipartiteGraph":
        m, n = frozenset(part_m), frozenset(part_n)
        if m & n:
            raise ParseError("parts overlap")
        g = Graph.build(m | n, edges)
        for u, v in g.edges:
            if (u in m) == (v in m):
                raise ParseError(f"edge ({u},{v}) stays inside one part")
        return BipartiteGraph(g, m, n)

    @staticmethod
    def complete(m: int, n: int) -> "BipartiteGraph":
        left = range(m)
        right = range(m, m + n)
        return BipartiteGraph.build(left, right, [(u, v) for u in left for v in right])

    @property
    def m_size(self) -> int:
        return len(self.part_m)

    @property
    def n_size(self) -> int:
        return len(self.part_n)

    @property
    def e(self) -> int:
        return self.graph.e

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def adj(self, v: int) -> tuple[int, ...]:
        return self.graph.adj[v]

    def side(self, v: int) -> str:
        return "M" if v in self.part_m else "N"

    def avg_degree(self) -> Fraction:
        return self.graph.avg_degree()

    def swap(self) -> "BipartiteGraph":
        return BipartiteGraph(self.graph, self.part_n, self.part_m)

    def induced(self, vertices) -> "BipartiteGraph":
        keep = set(vertices)
        return BipartiteGraph(self.graph.induced(keep), self.part_m & keep, self.part_n & keep)

    def without_edges(self, edges) -> "BipartiteGraph":
        return BipartiteGraph(self.graph.without_edges(edges), self.part_m, self.part_n)

    def restrict_edges(self, edges) -> "BipartiteGraph":
        keep = frozenset(_norm_edge(u, v) for u, v in edges)
        if not keep <= self.graph.edges:
            raise PreconditionViolated("restrict_edges got edges outside the host")
        return BipartiteGraph(Graph(self.graph.vertices, keep), self.part_m, self.part_n)

    def drop_isolated(self) -> "BipartiteGraph":
        live = {v for v in self.graph.vertices if self.graph.degree(v) > 0}
        return self.induced(live)

    def half_regular_degree(self, side: str) -> int | None:
        """Common degree of the given side, or None if degrees differ."""
        part = self.part_m if side == "M" else self.part_n
        degs = {self.graph.degree(v) for v in part}
        return degs.pop() if len(degs) == 1 else None


@dataclass(frozen=True)
class DegreeStats:
    """Per-side degree extremes and averages of a bipartite graph.

    Stores both readings of a side's "degree": the minimum degree
    (min_degree_m / min_degree_n) and the average e/|side|
    (avg_degree_m / avg_degree_n). Downstream operations state which
    one they consume.
    """

    min_degree_m: int
    max_degree_m: int
    avg_degree_m: Fraction
    min_degree_n: int
    max_degree_n: int
    avg_degree_n: Fraction
    avg_degree: Fraction

    @staticmethod
    def of(g: BipartiteGraph) -> "DegreeStats":
        if not g.part_m or not g.part_n:
            raise EmptyGraphError("degree stats need both sides nonempty")
        dm = [g.degree(v) for v in g.part_m]
        dn = [g.degree(v) for v in g.part_n]
        return DegreeStats(
            min(dm), max(dm), Fraction(g.e, len(dm)),
            min(dn), max(dn), Fraction(g.e, len(dn)),
            Fraction(2 * g.e, len(dm) + len(dn)),
        )


# ---------------------------------------------------------------------------
# Peeling


def peel_to_min_degree(g: Graph, t: int) -> Graph:
    """Unique maximal subgraph with minimum degree >= t (possibly empty)."""
    if t < 0:
        raise PreconditionViolated("peel threshold must be >= 0")
    if t == 0:
        return g
    deg = {v: g.degree(v) for v in g.vertices}
    dead = set()
    queue = deque(v for v, d in deg.items() if d < t)
    while queue:
        v = queue.popleft()
        if v in dead:
            continue
        dead.add(v)
        for u in g.adj[v]:
            if u not in dead:
                deg[u] -= 1
                if deg[u] < t:
                    queue.append(u)
    return g.induced(v for v in g.vertices if v not in dead)


def peel_bipartite(g: BipartiteGraph, t_m, t_n) -> BipartiteGraph:
    """Maximal sub-bipartite-graph with every M-degree >= t_m and N-degree >= t_n.

    Thresholds may be rational; comparisons are exact.
    """
    if t_m < 0 or t_n < 0:
        raise PreconditionViolated("peel thresholds must be >= 0")
    deg = {v: g.degree(v) for v in g.graph.vertices}
    thr = {v: (t_m if v in g.part_m else t_n) for v in g.graph.vertices}
    dead = set()
    queue = deque(v for v in g.graph.vertices if deg[v] < thr[v])
    while queue:
        v = queue.popleft()
        if v in dead:
            continue
        dead.add(v)
        for u in g.graph.adj[v]:
            if u not in dead:
                deg[u] -= 1
                if deg[u] < thr[u]:
                    queue.append(u)
    return g.induced(v for v in g.graph.vertices if v not in dead)


def half_regularize(g: BipartiteGraph, side: str, d: int, seed=None) -> BipartiteGraph:
    """Keep exactly d edges at every vertex of the chosen side.

    Selection is the d lowest-index neighbors, or a seeded sample when a
    seed is given. The other side is untouched apart from induced degree
    loss.
    """
    if side not in ("M", "N"):
        raise PreconditionViolated("side must be 'M' or 'N'")
    part = g.part_m if side == "M" else g.part_n
    rng = random.Random(seed) if seed is not None else None
    kept = []
    for v in sorted(part):
        nbrs = g.adj(v)
        if len(nbrs) < d:
            raise PreconditionViolated(f"vertex {v} has degree {len(nbrs)} < {d}")
        chosen = rng.sample(nbrs, d) if rng is not None else nbrs[:d]
        kept.extend((v, u) for u in chosen)
    return g.restrict_edges(kept)


# ---------------------------------------------------------------------------
# Almost-regularity measures


def almost_regularity(g: Graph) -> Fraction:
    """Delta/delta ratio; the graph is mu-almost-regular iff the result <= mu."""
    if g.n == 0 or g.min_degree() == 0:
        raise EmptyGraphError("almost-regularity needs min degree >= 1")
    return Fraction(g.max_degree(), g.min_degree())


def almost_biregularity(g: BipartiteGraph) -> tuple[Fraction, Fraction]:
    """Per-side Delta/delta ratios (M first)."""
    stats = DegreeStats.of(g)
    if stats.min_degree_m == 0 or stats.min_degree_n == 0:
        raise EmptyGraphError("almost-biregularity needs positive min degree on both sides")
    return (
        Fraction(stats.max_degree_m, stats.min_degree_m),
        Fraction(stats.max_degree_n, stats.min_degree_n),
    )


# ---------------------------------------------------------------------------
# Edge-list text format
#
#   first line: "p m n" (bipartite; M = 0..m-1, N = m..m+n-1) or "g n"
#   following lines: "u v" (0-based). '#'-prefixed lines are comments.
# The parser is strict: duplicate edges, out-of-range ids, self-loops and
# same-side edges (bipartite mode) are rejected.


def parse_edge_list(text: str) -> Graph | BipartiteGraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    header = lines[0].split()
    body = lines[1:]
    seen = set()

    def read_edges(limit_check):
        edges = []
        for ln in body:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError(f"bad edge line: {ln!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(f"bad edge line: {ln!r}") from exc
            if u == v:
                raise ParseError(f"self-loop at {u}")
            key = _norm_edge(u, v)
            if key in seen:
                raise ParseError(f"duplicate edge ({u},{v})")
            seen.add(key)
            limit_check(u, v)
            edges.append((u, v))
        return edges

    if header[0] == "g":
        if len(header) != 2:
            raise ParseError("general header must be 'g n'")
        n = int(header[1])

        def check(u, v):
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex out of range in edge ({u},{v})")

        return Graph.build(range(n), read_edges(check))

    if header[0] == "p":
        if len(header) != 3:
            raise ParseError("bipartite header must be 'p m n'")
        m, n = int(header[1]), int(header[2])

        def check(u, v):
            if not (0 <= u < m + n and 0 <= v < m + n):
                raise ParseError(f"vertex out of range in edge ({u},{v})")
            if (u < m) == (v < m):
                raise ParseError(f"same-side edge ({u},{v})")

        return BipartiteGraph.build(range(m), range(m, m + n), read_edges(check))

    raise ParseError(f"unknown header {header[0]!r}")


def format_edge_list(g: Graph | BipartiteGraph, comments: list[str] | None = None) -> str:
    """Serialize with dense 0-based ids (original ids are relabeled in sorted order)."""
    out = [f"# {c}" for c in (comments or [])]
    if isinstance(g, BipartiteGraph):
        order = sorted(g.part_m) + sorted(g.part_n)
        relabel = {v: i for i, v in enumerate(order)}
        out.append(f"p {g.m_size} {g.n_size}")
        base = g.graph
    else:
        relabel = {v: i for i, v in enumerate(g.vertices)}
        out.append(f"g {g.n}")
        base = g
    for u, v in sorted(base.edges):
        a, b = relabel[u], relabel[v]
        if a > b:
            a, b = b, a
        out.append(f"{a} {b}")
    return "\n".join(out) + "\n"
