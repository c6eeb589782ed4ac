"""Exact brute-force detectors for the forbidden configurations:
complete bipartite graphs, theta graphs, subdivisions of K_{s,t}, and
multi-subdivisions of K_p.

NotFound (returned as None) is exhaustive; when the node budget runs
out a CeilingHit is raised instead, never silently converted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import AssemblyFailed, CeilingHit, PreconditionViolated
from .graphs import BipartiteGraph, Graph

DEFAULT_GUARD = 10 ** 8


def biclique_density_constant(s: int, t: int) -> float:
    """Coefficient for the biclique-free edge bound
    e(G) <= c (m n^(1-1/s) + m + n).

    No closed form is pinned by the source material; this default comes
    from the standard double-counting argument and is flagged as a
    configuration constant, not a derived one.
    """
    return max((t - 1) ** (1.0 / s), float(s))

KINDS = ("complete-bipartite", "theta", "kst-subdivision", "kp-multi-subdivision")


@dataclass(frozen=True)
class PatternSpec:
    kind: str
    s: int = 0
    t: int = 0
    p: int = 0
    k: int = 1
    r: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionViolated(f"unknown pattern kind {self.kind!r}")
        if self.kind == "complete-bipartite":
            if self.s < 1 or self.t < 1:
                raise PreconditionViolated("complete bipartite needs s, t >= 1")
        elif self.kind == "theta":
            if self.s < 1 or self.k < 1:
                raise PreconditionViolated("theta needs s, k >= 1")
            if self.k == 1 and self.s > 1:
                raise PreconditionViolated("theta with k = 1 and s > 1 is a multigraph")
        elif self.kind == "kst-subdivision":
            if self.s < 1 or self.t < 1 or self.k < 1 or self.r < 1:
                raise PreconditionViolated("need s, t, k, r >= 1")
        else:
            if self.p < 2 or self.k < 1 or self.r < 1:
                raise PreconditionViolated("need p >= 2 and k, r >= 1")
        if self.kind == "kp-multi-subdivision" and self.k == 1 and self.r > 1:
            raise PreconditionViolated("k = 1 with r > 1 is a multigraph")
        if self.kind == "kst-subdivision" and self.k == 1 and self.r > 1:
            raise PreconditionViolated("k = 1 with r > 1 is a multigraph")

    def required_pairs(self) -> list[tuple[int, int, int]]:
        """(branch index a, branch index b, multiplicity) per connected pair."""
        if self.kind == "complete-bipartite":
            return [(i, self.s + j, 1) for i in range(self.s) for j in range(self.t)]
        if self.kind == "theta":
            return [(0, 1, self.s)]
        if self.kind == "kst-subdivision":
            return [(i, self.s + j, self.r)
                    for i in range(self.s) for j in range(self.t)]
        return [(i, j, self.r) for i, j in combinations(range(self.p), 2)]

    def num_branches(self) -> int:
        if self.kind == "complete-bipartite" or self.kind == "kst-subdivision":
            return self.s + self.t
        if self.kind == "theta":
            return 2
        return self.p

    def path_length(self) -> int:
        return 1 if self.kind == "complete-bipartite" else self.k


@dataclass(frozen=True)
class Witness:
    """Branch vertices plus the internally disjoint path system.

    paths[i] runs between branches[pair_index[i][0]] and
    branches[pair_index[i][1]].
    """

    branches: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    pair_index: tuple[tuple[int, int], ...]

    def to_json(self) -> str:
        return json.dumps({
            "branches": list(self.branches),
            "paths": [list(p) for p in self.paths],
            "pair_index": [list(q) for q in self.pair_index],
        }, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Witness":
        data = json.loads(text)
        return Witness(tuple(data["branches"]),
                       tuple(tuple(p) for p in data["paths"]),
                       tuple(tuple(q) for q in data["pair_index"]))


def _base(g) -> Graph:
    return g.graph if isinstance(g, BipartiteGraph) else g


def verify_witness(g, spec: PatternSpec, w: Witness) -> bool:
    """Recheck every witness invariant edge by edge; independent of the search."""
    base = _base(g)
    if len(w.branches) != spec.num_branches():
        return False
    if len(set(w.branches)) != len(w.branches):
        return False
    if any(v not in base.adj for v in w.branches):
        return False
    k = spec.path_length()
    need = {}
    for a, b, mult in spec.required_pairs():
        need[(a, b)] = mult
    got: dict[tuple[int, int], int] = {}
    branch_set = set(w.branches)
    seen_internal: set[int] = set()
    if len(w.paths) != len(w.pair_index):
        return False
    for path, (ai, bi) in zip(w.paths, w.pair_index):
        if len(path) != k + 1:
            return False
        if path[0] != w.branches[ai] or path[-1] != w.branches[bi]:
            return False
        if len(set(path)) != len(path):
            return False
        for u, v in zip(path, path[1:]):
            if not base.has_edge(u, v):
                return False
        internal = set(path[1:-1])
        if internal & branch_set:
            return False
        if internal & seen_internal:
            return False
        seen_internal |= internal
        key = (ai, bi) if (ai, bi) in need else (bi, ai)
        got[key] = got.get(key, 0) + 1
    return got == need


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise CeilingHit("search node budget exhausted")


def _k_paths(base: Graph, a: int, b: int, k: int, banned: set, budget: _Budget):
    """Yield simple a..b paths of exactly k edges avoiding `banned` internally."""
    path = [a]
    on_path = {a}

    def step(v: int, left: int):
        budget.spend()
        if left == 0:
            if v == b:
                yield tuple(path)
            return
        for u in base.adj[v]:
            if u == b:
                if left == 1:
                    path.append(u)
                    yield tuple(path)
                    path.pop()
                continue
            if u in on_path or u in banned:
                continue
            path.append(u)
            on_path.add(u)
            yield from step(u, left - 1)
            path.pop()
            on_path.discard(u)

    if a == b:
        return
    yield from step(a, k)


def _pack_paths(base: Graph, branches: tuple[int, ...], slots, k: int,
                budget: _Budget):
    """Backtracking packing of internally disjoint fixed-length paths."""
    used: set = set(branches)
    chosen: list[tuple[int, ...]] = []

    def fill(i: int):
        if i == len(slots):
            yield tuple(chosen)
            return
        ai, bi = slots[i]
        banned = used - {branches[ai], branches[bi]}
        for path in _k_paths(base, branches[ai], branches[bi], k, banned, budget):
            internal = set(path[1:-1])
            if internal & used:
                continue
            used.update(internal)
            chosen.append(path)
            yield from fill(i + 1)
            chosen.pop()
            used.difference_update(internal)

    yield from fill(0)


def find_pattern(g, spec: PatternSpec, guard: int = DEFAULT_GUARD) -> Witness | None:
    """Complete backtracking search; None means exhaustively not found.

    Branch candidates are tried in descending degree order (a pruning
    heuristic with no correctness impact). Raises CeilingHit when the
    node budget is exhausted.
    """
    base = _base(g)
    budget = _Budget(guard)
    order = sorted(base.vertices, key=lambda v: (-base.degree(v), v))
    if spec.kind == "complete-bipartite":
        return _find_biclique(base, spec, order, budget)

    k = spec.path_length()
    nb = spec.num_branches()
    slots = []
    for a, b, mult in spec.required_pairs():
        slots.extend([(a, b)] * mult)
    min_deg = {i: 0 for i in range(nb)}
    for a, b, mult in spec.required_pairs():
        min_deg[a] += mult
        min_deg[b] += mult

    # In a bipartite host a k-path crosses sides iff k is odd, so branch
    # assignments of the wrong parity can be discarded before any path
    # search (pruning only; the path packer enforces this anyway).
    side = None
    if isinstance(g, BipartiteGraph):
        side = {v: v in g.part_m for v in base.vertices}

    def parity_ok(picked: list[int]) -> bool:
        if side is None:
            return True
        want_cross = k % 2 == 1
        for a, b in slots:
            if a < len(picked) and b < len(picked):
                if (side[picked[a]] != side[picked[b]]) != want_cross:
                    return False
        return True

    cand = [v for v in order]

    def choose(idx: int, picked: list[int]):
        budget.spend()
        if idx == nb:
            for paths in _pack_paths(base, tuple(picked), slots, k, budget):
                return Witness(tuple(picked), paths,
                               tuple((a, b) for a, b in slots))
            return None
        symmetric = _symmetric_with_previous(spec, idx)
        for v in cand:
            if v in picked:
                continue
            if base.degree(v) < min_deg[idx]:
                continue
            if symmetric and picked and v < picked[idx - 1]:
                continue
            picked.append(v)
            if parity_ok(picked):
                got = choose(idx + 1, picked)
                if got is not None:
                    return got
            picked.pop()
        return None

    return choose(0, [])


def _symmetric_with_previous(spec: PatternSpec, idx: int) -> bool:
    """Branch slots interchangeable with the previous one can be forced
    into increasing vertex order."""
    if spec.kind == "theta":
        return idx == 1
    if spec.kind == "kp-multi-subdivision":
        return idx >= 1
    if spec.kind == "kst-subdivision":
        return (1 <= idx < spec.s) or (spec.s + 1 <= idx < spec.s + spec.t)
    return False


def _find_biclique(base: Graph, spec: PatternSpec, order, budget: _Budget):
    s, t = spec.s, spec.t
    swap = s > t
    pick_size, need_size = (t, s) if swap else (s, t)

    def build(picked: list[int], common: set) -> Witness:
        other = sorted(common)[:need_size]
        s_side, t_side = (other, list(picked)) if swap else (list(picked), other)
        branches = tuple(s_side) + tuple(t_side)
        paths = tuple((s_side[i], t_side[j]) for i in range(s) for j in range(t))
        pair_index = tuple((i, s + j) for i in range(s) for j in range(t))
        return Witness(branches, paths, pair_index)

    def extend(start: int, picked: list[int], common: set):
        budget.spend()
        if len(picked) == pick_size:
            return build(picked, common) if len(common) >= need_size else None
        for i in range(start, len(order)):
            v = order[i]
            new_common = common & set(base.adj[v]) if picked else set(base.adj[v])
            if len(new_common) < need_size:
                continue
            picked.append(v)
            got = extend(i + 1, picked, new_common)
            if got is not None:
                return got
            picked.pop()
        return None

    return extend(0, [], set())


def find_complete_bipartite(g, s: int, t: int,
                            guard: int = DEFAULT_GUARD) -> Witness | None:
    return find_pattern(g, PatternSpec("complete-bipartite", s=s, t=t), guard)


def greedy_assemble(link_producer, branch_sets: tuple, spec: PatternSpec,
                    host=None) -> Witness:
    """Assemble a subdivision pattern from a path producer.

    `link_producer(x, y, banned)` must return a vertex sequence from x
    to y avoiding `banned`; failures (None or an exception from the
    producer) surface as AssemblyFailed. The returned witness is
    verified against `host` when given.
    """
    if spec.kind == "kst-subdivision":
        xs, ys = branch_sets
        branches = tuple(xs) + tuple(ys)
    elif spec.kind == "theta":
        xs, ys = branch_sets
        branches = (xs[0] if isinstance(xs, (list, tuple)) else xs,
                    ys[0] if isinstance(ys, (list, tuple)) else ys)
    elif spec.kind == "kp-multi-subdivision":
        branches = tuple(branch_sets[0])
    else:
        raise PreconditionViolated("greedy assembly is for subdivision patterns")
    if len(set(branches)) != len(branches):
        raise PreconditionViolated("branch vertices must be distinct")

    used: set = set()
    paths = []
    pair_index = []
    for a, b, mult in spec.required_pairs():
        for _ in range(mult):
            banned = (used | set(branches)) - {branches[a], branches[b]}
            try:
                path = link_producer(branches[a], branches[b], banned)
            except Exception as exc:  # producer refusals surface uniformly
                raise AssemblyFailed(f"producer refused: {exc}") from exc
            if path is None:
                raise AssemblyFailed("producer returned no path")
            path = tuple(path)
            if path[0] != branches[a] or path[-1] != branches[b]:
                raise AssemblyFailed("producer path has wrong endpoints")
            internal = set(path[1:-1])
            if internal & (used | set(branches)):
                raise AssemblyFailed("producer path reused a vertex")
            used |= internal
            paths.append(path)
            pair_index.append((a, b))
    w = Witness(branches, tuple(paths), tuple(pair_index))
    if host is not None and not verify_witness(host, spec, w):
        raise AssemblyFailed("assembled witness failed verification")
    return w
