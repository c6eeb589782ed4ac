"""Biregularization pipeline: one-side-regular reduction, minimum-load
roofs, roof stripping with dyadic buckets, and the certificate-producing
entry points (strict / floor / weak variants).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction

from .errors import InternalInvariantBroken, PreconditionViolated, TooLarge
from .graphs import BipartiteGraph, DegreeStats, peel_bipartite, half_regularize
from .matching import capacitated_assignment
from .regularize import geq_with_slack

#: Default minimum average degree demanded by the weak variant; the
#: underlying argument only asserts existence of such a threshold.
DEFAULT_WEAK_MIN_AVG_DEGREE = 32.0


@dataclass(frozen=True)
class Roof:
    """Subgraph giving every N-vertex degree exactly one; delta is the max M-load."""

    edges: frozenset[tuple[int, int]]
    delta: int


def min_roof(g: BipartiteGraph) -> Roof:
    """N-roof minimizing the maximum M-side load.

    The optimum equals max over nonempty X subset of N of
    ceil(|X| / |N(X)|); found by binary search on the load with an
    augmenting-path feasibility test.
    """
    n_side = sorted(g.part_n)
    if not n_side:
        raise PreconditionViolated("empty N side")
    for v in n_side:
        if g.degree(v) == 0:
            raise PreconditionViolated(f"isolated N-vertex {v}")
    adj = {v: g.adj(v) for v in n_side}

    lo, hi = 1, len(n_side)
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        result = capacitated_assignment(n_side, adj, mid)
        if isinstance(result, dict):
            best = result
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        raise InternalInvariantBroken("no feasible roof at load |N|")

    loads: dict[int, int] = {}
    for v, m in best.items():
        loads[m] = loads.get(m, 0) + 1
    edges = frozenset((min(v, best[v]), max(v, best[v])) for v in n_side)
    if len(edges) != len(n_side):
        raise InternalInvariantBroken("roof does not cover every N-vertex exactly once")
    return Roof(edges, max(loads.values()))


def roof_bottleneck_oracle(g: BipartiteGraph) -> int:
    """Exact max over nonempty X subset of N of ceil(|X|/|N(X)|) by enumeration."""
    n_side = sorted(g.part_n)
    if len(n_side) > 20:
        raise TooLarge("subset enumeration limited to |N| <= 20")
    if not n_side:
        raise PreconditionViolated("empty N side")
    m_index = {m: i for i, m in enumerate(sorted(g.part_m))}
    masks = []
    for v in n_side:
        bits = 0
        for u in g.adj(v):
            bits |= 1 << m_index[u]
        masks.append(bits)
    k = len(n_side)
    cover = [0] * (1 << k)
    best = 0
    for s in range(1, 1 << k):
        low = s & -s
        cover[s] = cover[s ^ low] | masks[low.bit_length() - 1]
        nx = cover[s].bit_count()
        if nx == 0:
            raise PreconditionViolated("isolated N-vertex")
        value = -(-s.bit_count() // nx)
        if value > best:
            best = value
    return best


# ---------------------------------------------------------------------------
# One-side regularization (minimal-subgraph descent)


def _one_side_regularize_impl(g: BipartiteGraph, c, alpha, beta):
    c = float(c)
    alpha, beta = float(alpha), float(beta)
    if not (0 < alpha <= 1 and 0 < beta <= 1 and alpha + beta >= 1):
        raise PreconditionViolated("need 0 < alpha, beta <= 1 and alpha + beta >= 1")
    if g.m_size == 0 or g.n_size == 0:
        raise PreconditionViolated("both sides must be nonempty")
    if g.avg_degree() < 8:
        raise PreconditionViolated("need d(G) >= 8")
    if not geq_with_slack(g.e, c * g.m_size ** alpha * g.n_size ** beta):
        raise PreconditionViolated("need e(G) >= c |M|^alpha |N|^beta")
    d_orig = g.avg_degree()

    def conditions_hold(h: BipartiteGraph) -> bool:
        if h.m_size == 0 or h.n_size == 0:
            return False
        return (geq_with_slack(h.e, c * h.m_size ** alpha * h.n_size ** beta)
                and h.avg_degree() >= d_orig)

    def finish(h: BipartiteGraph, level: int):
        # larger side by vertex count; ties go to N
        side = "N" if h.n_size >= h.m_size else "M"
        return half_regularize(h, side, level), side, level

    current = g
    while True:
        quarter = current.avg_degree() / 4
        level = math.ceil(quarter)
        if all(current.degree(v) >= quarter for v in current.graph.vertices):
            return finish(current, level)
        peeled = peel_bipartite(current, quarter, quarter)
        if peeled.e == 0:
            raise InternalInvariantBroken("quarter-average peel removed every edge")
        if conditions_hold(peeled):
            current = peeled
            continue
        return finish(peeled, level)


def one_side_regularize(g: BipartiteGraph, c, alpha, beta) -> BipartiteGraph:
    """Subgraph half-regular at the larger side, keeping relative density
    (up to 1/2^(2+1/alpha+1/beta)) and at least 1/8 of the average degree.
    """
    return _one_side_regularize_impl(g, c, alpha, beta)[0]


# ---------------------------------------------------------------------------
# Roof stripping (half-regular input)


def _find_tight_with_roof(part_n: set, adj: dict, mu: Fraction, cap: int):
    """Minimal S subset of part_n with |S|/|N(S)| >= mu together with an
    S-roof of load <= cap = ceil(mu).

    Greedy lowest-index shrinking interleaved with Hall-violator
    restarts from the failed assignment; the violator is always a
    strictly smaller qualifying subset, so the loop terminates.
    """
    s = set(part_n)
    while True:
        # greedy shrink, lowest index first, until no single removal keeps the ratio
        changed = True
        while changed:
            changed = False
            coverage: dict[int, int] = {}
            for v in s:
                for u in adj[v]:
                    coverage[u] = coverage.get(u, 0) + 1
            n_cover = len(coverage)
            for v in sorted(s):
                private = sum(1 for u in adj[v] if coverage[u] == 1)
                if len(s) == 1:
                    break
                if Fraction(len(s) - 1, n_cover - private) >= mu:
                    s.remove(v)
                    for u in adj[v]:
                        coverage[u] -= 1
                        if coverage[u] == 0:
                            del coverage[u]
                    n_cover = len(coverage)
                    changed = True
        result = capacitated_assignment(sorted(s), adj, cap)
        if isinstance(result, dict):
            neighborhood = set()
            for v in s:
                neighborhood.update(adj[v])
            return s, neighborhood, result
        if result >= s:
            raise InternalInvariantBroken("Hall violator did not shrink the candidate")
        s = set(result)


@dataclass(frozen=True)
class BiregularizationCertificate:
    """Realized input/output quantities and the promised inequalities.

    `edge_bound` is the full right-hand side of the edge claim;
    `degree_floor` the average-degree floor; the ratio claim is
    max(ratio_m, ratio_n) <= 16.
    """

    kind: str
    input_m: int
    input_n: int
    input_e: int
    input_avg_degree: float
    c: float
    alpha: float
    beta: float
    output_m: int
    output_n: int
    output_e: int
    output_avg_degree: float
    ratio_m: float
    ratio_n: float
    edge_bound: float
    degree_floor: float
    ratio_bound: float
    edge_ok: bool
    degree_ok: bool
    ratio_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.edge_ok and self.degree_ok and self.ratio_ok

    def to_dict(self) -> dict:
        return asdict(self)


def _make_cert(kind, g_in: BipartiteGraph, out: BipartiteGraph, c, alpha, beta,
               edge_bound: float, degree_floor: float) -> BiregularizationCertificate:
    stats = DegreeStats.of(out)
    ratio_m = stats.max_degree_m / stats.min_degree_m
    ratio_n = stats.max_degree_n / stats.min_degree_n
    avg_out = float(stats.avg_degree)
    return BiregularizationCertificate(
        kind=kind,
        input_m=g_in.m_size, input_n=g_in.n_size, input_e=g_in.e,
        input_avg_degree=float(g_in.avg_degree()),
        c=float(c), alpha=float(alpha), beta=float(beta),
        output_m=out.m_size, output_n=out.n_size, output_e=out.e,
        output_avg_degree=avg_out,
        ratio_m=ratio_m, ratio_n=ratio_n,
        edge_bound=edge_bound, degree_floor=degree_floor, ratio_bound=16.0,
        edge_ok=geq_with_slack(out.e, edge_bound),
        degree_ok=geq_with_slack(avg_out, degree_floor),
        ratio_ok=max(ratio_m, ratio_n) <= 16.0 + 1e-12,
    )


def half_to_biregular(g: BipartiteGraph, c, alpha, beta
                      ) -> tuple[BipartiteGraph, BiregularizationCertificate]:
    """16-almost-biregular subgraph of a graph half-regular at N.

    Repeatedly strips minimum-load roofs off minimal bottleneck subsets
    of N, groups the iterations into dyadic buckets of |N_i|, and peels
    the roof union of one thick bucket at quarter-average thresholds.
    """
    c = float(c)
    alpha, beta = float(alpha), float(beta)
    if not (0 < alpha <= 1 and 0 < beta <= 1 and alpha + beta > 1):
        raise PreconditionViolated("need 0 < alpha, beta <= 1 and alpha + beta > 1")
    m0, n0 = g.m_size, g.n_size
    if m0 < 2 or n0 < m0:
        raise PreconditionViolated("need 2 <= |M| <= |N|")
    d = g.half_regular_degree("N")
    if d is None or d < 1:
        raise PreconditionViolated("input must be d-half-regular at N with d >= 1")
    if not geq_with_slack(g.e, c * m0 ** alpha * n0 ** beta):
        raise PreconditionViolated("need e(G) >= c |M|^alpha |N|^beta")

    mu = Fraction(n0, m0)
    cap = math.ceil(mu)
    current_n = set(g.part_n)
    adj = {v: list(g.adj(v)) for v in g.part_n}
    live_adj = {v: set(ns) for v, ns in adj.items()}

    roofs = []          # (n_set, m_set, roof edge set)
    for _ in range(d):
        frozen = {v: tuple(sorted(live_adj[v])) for v in current_n}
        n_i, m_i, assign = _find_tight_with_roof(current_n, frozen, mu, cap)
        roof_edges = frozenset((min(v, assign[v]), max(v, assign[v])) for v in n_i)
        roofs.append((frozenset(n_i), frozenset(m_i), roof_edges))
        for v in n_i:
            live_adj[v].discard(assign[v])
        for v in set(current_n) - n_i:
            live_adj.pop(v, None)
        # restrict to the stripped subgraph: neighbors outside m_i vanish
        for v in n_i:
            live_adj[v] &= m_i
        current_n = set(n_i)

    sizes = [len(n_i) for n_i, _, _ in roofs]
    if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
        raise InternalInvariantBroken("bottleneck subsets are not nested")

    buckets: dict[int, list[int]] = {}
    for i, s in enumerate(sizes):
        j = max(1, (-(-n0 // s) - 1).bit_length())
        buckets.setdefault(j, []).append(i)

    eps_bal = (2.0 ** (alpha + beta - 1.0) - 1.0) / 2.0
    thin_total = 0
    thick = {}
    for j, idxs in buckets.items():
        if len(idxs) < eps_bal * d / 2.0 ** ((alpha + beta - 1.0) * j):
            thin_total += len(idxs)
        else:
            thick[j] = idxs
    if 2 * thin_total >= d:
        raise InternalInvariantBroken("thin buckets exceeded d/2")

    log_m = (m0 - 1).bit_length()  # ceil(log2 m0) for m0 >= 2
    required = Fraction(d, 2 * log_m)
    best = None
    for j in sorted(thick):
        if len(thick[j]) >= required and (best is None or len(thick[j]) > len(thick[best])):
            best = j
    if best is None:
        raise InternalInvariantBroken("no thick bucket of the required size")

    idxs = thick[best]
    if idxs != list(range(idxs[0], idxs[0] + len(idxs))):
        raise InternalInvariantBroken("bucket iterations are not consecutive")
    p = len(idxs)
    n_l, m_l, _ = roofs[idxs[0]]
    union_edges = set()
    for i in idxs:
        union_edges |= roofs[i][2]
    r_graph = BipartiteGraph.build(m_l, n_l, union_edges)

    d_m = Fraction(r_graph.e, len(m_l))
    d_n = Fraction(r_graph.e, len(n_l))
    out = peel_bipartite(r_graph, d_m / 4, d_n / 4).drop_isolated()
    if out.e == 0:
        raise InternalInvariantBroken("quarter-average peel emptied the roof union")
    if 2 * out.e < r_graph.e:
        raise InternalInvariantBroken("peel dropped more than half the roof edges")

    edge_bound = (2.0 ** (alpha + beta - 1.0) - 1.0) / 32.0 * c \
        * out.m_size ** alpha * out.n_size ** beta
    degree_floor = d / (8.0 * log_m)
    return out, _make_cert("half-to-biregular", g, out, c, alpha, beta,
                           edge_bound, degree_floor)


def biregularize(g: BipartiteGraph, c, alpha, beta
                 ) -> tuple[BipartiteGraph, BiregularizationCertificate]:
    """16-almost-biregular subgraph with density coefficient
    lambda = (2^(alpha+beta-1) - 1) / 2^(6 + 1/alpha + 1/beta) and
    average degree at least d(G) / (64 log2 |M|).
    """
    c = float(c)
    alpha, beta = float(alpha), float(beta)
    if not (0 < alpha <= 1 and 0 < beta <= 1 and alpha + beta > 1):
        raise PreconditionViolated("need 0 < alpha, beta <= 1 and alpha + beta > 1")
    if g.m_size > g.n_size:
        raise PreconditionViolated("need |M| <= |N|")

    g0, side, _level = _one_side_regularize_impl(g, c, alpha, beta)
    c0 = c / 2.0 ** (2.0 + 1.0 / alpha + 1.0 / beta)

    swapped = side == "M"
    inner = g0.swap() if swapped else g0
    inner_alpha, inner_beta = (beta, alpha) if swapped else (alpha, beta)
    if inner.m_size > inner.n_size:
        raise InternalInvariantBroken("half-regular side is not the larger side")
    sub, _inner_cert = half_to_biregular(inner, c0, inner_alpha, inner_beta)
    out = sub.swap() if swapped else sub

    lam = (2.0 ** (alpha + beta - 1.0) - 1.0) / 2.0 ** (6.0 + 1.0 / alpha + 1.0 / beta)
    edge_bound = lam * c * out.m_size ** alpha * out.n_size ** beta
    degree_floor = float(g.avg_degree()) / (64.0 * math.log2(g.m_size))
    return out, _make_cert("biregularize", g, out, c, alpha, beta,
                           edge_bound, degree_floor)


def biregularize_with_floor(g: BipartiteGraph, c, alpha, beta
                            ) -> tuple[BipartiteGraph, BiregularizationCertificate]:
    """Biregularization with the additive m' + n' edge floor
    (coefficient lambda' = min(lambda/2, 1/256))."""
    c = float(c)
    alpha, beta = float(alpha), float(beta)
    m, n = g.m_size, g.n_size
    if m < 2:
        raise PreconditionViolated("need |M| >= 2")
    if not geq_with_slack(g.e, c * (m ** alpha * n ** beta + n * math.log2(m))):
        raise PreconditionViolated("need e(G) >= c (m^alpha n^beta + n log2 m)")
    out, cert = biregularize(g, c, alpha, beta)
    lam = (2.0 ** (alpha + beta - 1.0) - 1.0) / 2.0 ** (6.0 + 1.0 / alpha + 1.0 / beta)
    lam_floor = min(lam / 2.0, 1.0 / 256.0)
    edge_bound = lam_floor * c * (out.m_size ** alpha * out.n_size ** beta
                                  + out.m_size + out.n_size)
    return out, _make_cert("biregularize-floor", g, out, c, alpha, beta,
                           edge_bound, cert.degree_floor)


def check_biregularization_certificate(cert: BiregularizationCertificate,
                                       out: BipartiteGraph) -> bool:
    """Recompute the witnessed output quantities from `out` and compare;
    true iff integer fields match exactly and all claimed bounds hold."""
    if (out.m_size, out.n_size, out.e) != (cert.output_m, cert.output_n, cert.output_e):
        return False
    stats = DegreeStats.of(out)
    if not math.isclose(stats.max_degree_m / stats.min_degree_m, cert.ratio_m):
        return False
    if not math.isclose(stats.max_degree_n / stats.min_degree_n, cert.ratio_n):
        return False
    if not math.isclose(float(stats.avg_degree), cert.output_avg_degree):
        return False
    edge_ok = geq_with_slack(out.e, cert.edge_bound)
    degree_ok = geq_with_slack(float(stats.avg_degree), cert.degree_floor)
    ratio_ok = max(cert.ratio_m, cert.ratio_n) <= cert.ratio_bound + 1e-12
    if (edge_ok, degree_ok, ratio_ok) != (cert.edge_ok, cert.degree_ok, cert.ratio_ok):
        return False
    return cert.all_ok


# ---------------------------------------------------------------------------
# Weak biregularization


@dataclass(frozen=True)
class WeakBiregularityCertificate:
    """Weak variant: the side written as `ratio_side` carries the
    mu-ratio claim (mu = max(16, 4 ceil(log_{1+eps/2}(2 alpha/(alpha+beta-1))))),
    the other side the max <= min^(1+eps) claim."""

    branch: str
    c: float
    alpha: float
    beta: float
    eps: float
    min_avg_degree: float
    target_avg_degree: float
    mu: float
    lam: float
    ratio_side: str
    output_m: int
    output_n: int
    output_e: int
    output_avg_degree: float
    min_degree_m: int
    max_degree_m: int
    min_degree_n: int
    max_degree_n: int
    ratio_ok: bool
    power_ok: bool
    degree_ok: bool
    edge_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.ratio_ok and self.power_ok and self.degree_ok and self.edge_ok

    def to_dict(self) -> dict:
        return asdict(self)


def weak_biregularize(g: BipartiteGraph, c, alpha, beta, eps, target_avg_degree,
                      min_avg_degree: float = DEFAULT_WEAK_MIN_AVG_DEGREE
                      ) -> tuple[BipartiteGraph, WeakBiregularityCertificate]:
    """Weak biregularization: constant ratio on the larger side, a
    (1+eps)-power spread on the smaller side.

    `target_avg_degree` is the L' parameter (must be >= 16^(2/eps));
    `min_avg_degree` is the configurable existence threshold on d(G).
    """
    c, alpha, beta, eps = float(c), float(alpha), float(beta), float(eps)
    target = float(target_avg_degree)
    if not (0 < alpha <= 1 and 0 < beta <= 1 and alpha + beta > 1):
        raise PreconditionViolated("need 0 < alpha, beta <= 1 and alpha + beta > 1")
    if eps <= 0:
        raise PreconditionViolated("need eps > 0")
    if target < 16.0 ** (2.0 / eps) * (1 - 1e-12):
        raise PreconditionViolated("need L' >= 16^(2/eps)")
    if g.m_size > g.n_size:
        raise PreconditionViolated("need |M| <= |N|")
    if g.avg_degree() < min_avg_degree:
        raise PreconditionViolated(f"need d(G) >= {min_avg_degree}")
    if not geq_with_slack(g.e, c * g.m_size ** alpha * g.n_size ** beta):
        raise PreconditionViolated("need e(G) >= c |M|^alpha |N|^beta")

    lam0 = 2.0 ** -(2.0 + 1.0 / alpha + 1.0 / beta)
    g0, side, _ = _one_side_regularize_impl(g, c, alpha, beta)

    # orient so the half-regular (larger) side sits in the N position
    swapped = side == "M"
    work = g0.swap() if swapped else g0
    w_alpha, w_beta = (beta, alpha) if swapped else (alpha, beta)
    m0, n0 = work.m_size, work.n_size

    gamma = (alpha + beta - 1.0) / 2.0
    p = max(1, math.ceil(math.log(2.0 * alpha / (alpha + beta - 1.0))
                         / math.log(1.0 + eps / 2.0)))
    mu = max(16.0, 4.0 * p)

    if lam0 * c * m0 ** w_alpha * n0 ** w_beta > n0 ** (1.0 + gamma):
        branch = "dense"
        inner = work if work.m_size <= work.n_size else work.swap()
        ia, ib = (w_alpha, w_beta) if work.m_size <= work.n_size else (w_beta, w_alpha)
        if inner.avg_degree() < 8:
            raise PreconditionViolated("dense branch needs d(G0) >= 8")
        sub, _cert = half_to_biregular(inner, lam0 * c, ia, ib)
        out_work = sub if inner is work else sub.swap()
        lam_strict = (2.0 ** (alpha + beta - 1.0) - 1.0) \
            / 2.0 ** (6.0 + 1.0 / alpha + 1.0 / beta)
        lam = lam0 * lam_strict
    else:
        branch = "sparse"
        d_m0 = Fraction(work.e, m0)
        d_n0 = Fraction(work.e, n0)
        g1 = peel_bipartite(work, d_m0 / 4, d_n0 / 4).drop_isolated()
        big_d = n0 ** ((alpha + beta - 1.0) / (2.0 * alpha))
        classes: dict[int, set] = {}
        for x in g1.part_m:
            deg = g1.degree(x)
            i = 0
            while i < p and deg >= big_d ** ((1.0 + eps / 2.0) ** i):
                i += 1
            classes.setdefault(i, set()).add(x)
        best_i, best_e = None, -1
        for i, vs in sorted(classes.items()):
            sub_e = sum(g1.degree(x) for x in vs)
            if sub_e > best_e:
                best_i, best_e = i, sub_e
        g2 = g1.induced(classes[best_i] | set(g1.part_n)).drop_isolated()
        t_m = Fraction(g2.e, g2.m_size) / 4
        t_n = Fraction(g2.e, g2.n_size) / 4
        out_work = peel_bipartite(g2, t_m, t_n).drop_isolated()
        if out_work.e == 0:
            raise InternalInvariantBroken("sparse-branch peel emptied the class")
        lam = lam0 / (4.0 * p)

    out = out_work.swap() if swapped else out_work
    stats = DegreeStats.of(out)
    # the mu-ratio claim attaches to the side that was half-regularized (larger)
    ratio_side = "M" if swapped else "N"
    if ratio_side == "N":
        big = (stats.min_degree_n, stats.max_degree_n)
        small = (stats.min_degree_m, stats.max_degree_m)
    else:
        big = (stats.min_degree_m, stats.max_degree_m)
        small = (stats.min_degree_n, stats.max_degree_n)

    avg_out = float(stats.avg_degree)
    edge_bound = lam * c * out.m_size ** alpha * out.n_size ** beta
    cert = WeakBiregularityCertificate(
        branch=branch, c=c, alpha=alpha, beta=beta, eps=eps,
        min_avg_degree=min_avg_degree, target_avg_degree=target,
        mu=mu, lam=lam, ratio_side=ratio_side,
        output_m=out.m_size, output_n=out.n_size, output_e=out.e,
        output_avg_degree=avg_out,
        min_degree_m=stats.min_degree_m, max_degree_m=stats.max_degree_m,
        min_degree_n=stats.min_degree_n, max_degree_n=stats.max_degree_n,
        ratio_ok=big[1] <= mu * big[0],
        power_ok=small[1] <= small[0] ** (1.0 + eps) + 1e-9,
        degree_ok=geq_with_slack(avg_out, target),
        edge_ok=geq_with_slack(out.e, edge_bound),
    )
    return out, cert
