"""Almost-regular subgraph extraction with a machine-checkable certificate.

The pipeline: peel the host to a dense core, split it with a greedy
locally-optimal bipartition, half-regularize the larger side, strip
nested matchings off it, group the matchings into dyadic size buckets,
and peel the union of one thick bucket. The certificate records the
realized numbers and the three promised inequalities as booleans.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict

from .errors import InternalInvariantBroken, PreconditionViolated
from .graphs import BipartiteGraph, Graph, half_regularize, peel_to_min_degree
from .matching import alternating_reachable, hopcroft_karp

REL_SLACK = 2.0 ** -40


def geq_with_slack(lhs: float, rhs: float) -> bool:
    """lhs >= rhs up to the documented relative comparison slack."""
    return lhs >= rhs - REL_SLACK * max(abs(lhs), abs(rhs), 1.0)


@dataclass(frozen=True)
class PyberResult:
    matching: frozenset[tuple[int, int]]
    a1: frozenset[int]
    b1: frozenset[int]


def _sink_scc_lowest(nodes: list[int], out: dict[int, set]) -> set:
    """Sink strongly connected component whose minimum vertex is smallest."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(out[root])))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(out[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                sccs.append(comp)

    comp_of = {}
    for i, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = i
    sinks = []
    for i, comp in enumerate(sccs):
        if all(comp_of[w] == i for v in comp for w in out[v]):
            sinks.append(comp)
    return min(sinks, key=min)


def pyber_matching(g: BipartiteGraph, d: int) -> PyberResult:
    """Matching M1 with G[V(M1)] d-half-regular at A1 = V(M1) on the A side.

    The ordered parts of `g` play the roles (A, B) = (M, N). A minimal
    tight set A1 (|N(A1)| = |A1|, no proper subset tight) is found by a
    maximum matching, a Hall-violator shrink, and a sink strongly
    connected component of the reassignment digraph; ties break toward
    the lowest vertex index.
    """
    a_side = sorted(g.part_m)
    b_side = sorted(g.part_n)
    if not (len(a_side) >= len(b_side) >= 1):
        raise PreconditionViolated("need |A| >= |B| >= 1")
    if d < 1:
        raise PreconditionViolated("need d >= 1")
    for a in a_side:
        if g.degree(a) != d:
            raise PreconditionViolated(f"vertex {a} has degree {g.degree(a)} != {d}")

    adj = {v: g.adj(v) for v in a_side}
    pair_l = hopcroft_karp(a_side, adj)
    pair_r = {v: u for u, v in pair_l.items()}

    unmatched = [a for a in a_side if a not in pair_l]
    if unmatched:
        reach_l, _ = alternating_reachable(unmatched[0], adj, pair_r)
        tight = reach_l - {unmatched[0]}
    else:
        tight = set(a_side)
    if not tight:
        raise InternalInvariantBroken("empty tight set")

    # a -> partner of each neighbor; tight sets are the closed sets here.
    out = {a: {pair_r[b] for b in adj[a]} for a in tight}
    a1 = _sink_scc_lowest(sorted(tight), out)
    b1 = {pair_l[a] for a in a1}
    matching = frozenset((min(a, pair_l[a]), max(a, pair_l[a])) for a in a1)

    for a in a1:
        if not set(adj[a]) <= b1:
            raise InternalInvariantBroken("tight set is not closed")
    return PyberResult(matching, frozenset(a1), frozenset(b1))


def matching_cascade(g: BipartiteGraph, d: int) -> list[frozenset[tuple[int, int]]]:
    """ceil(d/2) edge-disjoint matchings with nested vertex sets.

    Iteration i runs pyber_matching at parameter d - i + 1 on the
    previous matching's vertex set minus the matching edges; sizes
    satisfy |M_i| >= d - i + 1.
    """
    rounds = -(-d // 2)
    current = g
    level = d
    out = []
    for i in range(1, rounds + 1):
        res = pyber_matching(current, level)
        out.append(res.matching)
        if len(res.matching) < d - i + 1:
            raise InternalInvariantBroken(
                f"matching {i} has size {len(res.matching)} < {d - i + 1}")
        current = current.induced(res.a1 | res.b1).without_edges(res.matching)
        level -= 1
    return out


def greedy_bipartition(g: Graph) -> BipartiteGraph:
    """Bipartition with only cross edges kept; every vertex ends with
    cross-degree >= ceil(deg/2) (single greedy pass, then local moves
    until stable). The larger side is placed as part M.
    """
    side = {}
    for v in g.vertices:
        c0 = sum(1 for u in g.adj[v] if side.get(u) == 0)
        c1 = sum(1 for u in g.adj[v] if side.get(u) == 1)
        side[v] = 0 if c1 >= c0 else 1
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            same = sum(1 for u in g.adj[v] if side[u] == side[v])
            cross = g.degree(v) - same
            if same > cross:
                side[v] = 1 - side[v]
                changed = True
    part0 = {v for v in g.vertices if side[v] == 0}
    part1 = set(g.vertices) - part0
    if len(part1) > len(part0):
        part0, part1 = part1, part0
    cross_edges = [(u, v) for u, v in g.edges if (u in part0) != (v in part0)]
    return BipartiteGraph.build(part0, part1, cross_edges)


@dataclass(frozen=True)
class RegularizationCertificate:
    """Realized quantities and the three promised inequalities."""

    input_n: int
    input_e: int
    input_avg_degree: float
    c: float
    epsilon: float
    output_m: int
    output_e: int
    output_min_degree: int
    output_max_degree: int
    edge_bound: float          # ((2^eps - 1)/48) * c * m^(1+eps)
    degree_ratio_bound: float  # 6
    avg_degree_bound: float    # d(G) / (12 log2(2n/d(G)))
    edge_ok: bool
    ratio_ok: bool
    avg_degree_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.edge_ok and self.ratio_ok and self.avg_degree_ok

    def to_dict(self) -> dict:
        return asdict(self)


def _certificate_for(h: Graph, n: int, e: int, c: float,
                     eps: float) -> RegularizationCertificate:
    d_avg = 2 * e / n
    m = h.n
    eh = h.e
    dmin = h.min_degree()
    dmax = h.max_degree()
    edge_bound = (2.0 ** eps - 1.0) / 48.0 * c * m ** (1.0 + eps)
    avg_bound = d_avg / (12.0 * math.log2(2.0 * n / d_avg))
    return RegularizationCertificate(
        input_n=n, input_e=e, input_avg_degree=d_avg,
        c=float(c), epsilon=float(eps),
        output_m=m, output_e=eh,
        output_min_degree=dmin, output_max_degree=dmax,
        edge_bound=edge_bound,
        degree_ratio_bound=6.0,
        avg_degree_bound=avg_bound,
        edge_ok=geq_with_slack(eh, edge_bound),
        ratio_ok=dmax <= 6 * dmin,
        avg_degree_ok=geq_with_slack(2 * eh / m, avg_bound),
    )


def enhanced_regularize(g: Graph, c, eps) -> tuple[Graph, RegularizationCertificate]:
    """6-almost-regular subgraph with relative density and average degree floors.

    Requires 0 < eps < 1, c > 0 and e(g) >= c * n^(1+eps). The returned
    certificate is recomputable from the output graph plus the recorded
    input quantities.
    """
    c = float(c)
    eps = float(eps)
    if not (0.0 < eps < 1.0):
        raise PreconditionViolated("need 0 < eps < 1")
    if c <= 0.0:
        raise PreconditionViolated("need c > 0")
    n, e = g.n, g.e
    if n == 0 or not geq_with_slack(e, c * n ** (1.0 + eps)):
        raise PreconditionViolated("need e(G) >= c n^(1+eps)")

    # Peeling at ceil(e/n) never empties the graph and dominates
    # ceil(c n^eps) under the density precondition.
    t = max(math.ceil(c * n ** eps - 1e-12), -(-e // n))
    core = peel_to_min_degree(g, t)
    if core.n == 0:
        raise InternalInvariantBroken("density core came out empty")

    bip = greedy_bipartition(core)
    d0 = min(bip.degree(v) for v in bip.part_m)
    if d0 < 1:
        raise InternalInvariantBroken("half-regularization level fell to 0")
    g0 = half_regularize(bip, "M", d0)
    matchings = matching_cascade(g0, d0)

    buckets: dict[int, list[int]] = {}
    for i, match in enumerate(matchings):
        s = len(match)
        j = (n // s).bit_length() - 1
        buckets.setdefault(j, []).append(i)

    thick_needed = d0 / (4.0 * math.log2(2.0 * n / d0))
    best = None
    for j, idxs in sorted(buckets.items()):
        thick = len(idxs) >= (2.0 ** eps - 1.0) / 2.0 * c * (n / 2 ** j) ** eps
        if thick and len(idxs) >= thick_needed:
            if best is None or len(idxs) > len(buckets[best]):
                best = j
    if best is None:
        raise InternalInvariantBroken("no thick bucket of the required size")

    idxs = buckets[best]
    if idxs != list(range(idxs[0], idxs[0] + len(idxs))):
        raise InternalInvariantBroken("bucket indices are not consecutive")
    p = len(idxs)
    union_edges = set()
    for i in idxs:
        union_edges |= matchings[i]
    verts = {v for e_ in matchings[idxs[0]] for v in e_}
    f = Graph(tuple(sorted(verts)), frozenset(union_edges))

    h = peel_to_min_degree(f, -(-p // 6))
    if h.n == 0:
        raise InternalInvariantBroken("final peel emptied the bucket union")
    return h, _certificate_for(h, n, e, c, eps)


def check_certificate(cert: RegularizationCertificate, h: Graph) -> bool:
    """Recompute every witnessed quantity from `h` and compare.

    True iff the stored output fields match the graph bit-for-bit, the
    recomputed bound values agree, and every claimed bound holds.
    """
    if h.n != cert.output_m or h.e != cert.output_e:
        return False
    if h.min_degree() != cert.output_min_degree or h.max_degree() != cert.output_max_degree:
        return False
    fresh = _certificate_for(h, cert.input_n, cert.input_e, cert.c, cert.epsilon)
    if not math.isclose(fresh.edge_bound, cert.edge_bound, rel_tol=1e-12):
        return False
    if not math.isclose(fresh.avg_degree_bound, cert.avg_degree_bound, rel_tol=1e-12):
        return False
    if (fresh.edge_ok, fresh.ratio_ok, fresh.avg_degree_ok) != (
            cert.edge_ok, cert.ratio_ok, cert.avg_degree_ok):
        return False
    return cert.all_ok


def minimal_tight_sets_brute(g: BipartiteGraph, max_size: int = 12) -> list[frozenset[int]]:
    """All minimal S subset of A with |N(S)| <= |S|, by subset enumeration.

    Differential oracle for pyber_matching; only valid for |A| <= max_size.
    """
    a_side = sorted(g.part_m)
    if len(a_side) > max_size:
        raise PreconditionViolated("brute-force oracle limited to small A")
    nbr = {a: set(g.adj(a)) for a in a_side}
    qualifying = []
    for mask in range(1, 1 << len(a_side)):
        subset = frozenset(a_side[i] for i in range(len(a_side)) if mask >> i & 1)
        seen = set()
        for a in subset:
            seen |= nbr[a]
        if len(seen) <= len(subset):
            qualifying.append(subset)
    return [s for s in qualifying if not any(t < s for t in qualifying)]
