"""Balanced-tree analysis and random-polynomial bipartite constructions.

Exact rational arithmetic everywhere a verdict depends on it: balance
checks enumerate subsets with Fractions, interval endpoints are
Fractions, and the construction parameters (rho, ell) come out of an
exact lcm computation.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (CeilingHit, NotPrime, PreconditionViolated, TooLarge,
                     VerificationFailed)
from .graphs import BipartiteGraph
from .trees import LabeledTree

#: Cap on the sampled polynomial degree; the argument's own degree
#: demand is far beyond desk scale and the sampled statistics only need
#: the degree to be at least the root-tuple size minus one.
DEFAULT_DEGREE_CAP = 6

DEFAULT_PAIR_GUARD = 4_000_000
DEFAULT_SUBSET_GUARD = 24


@dataclass(frozen=True)
class OrientedTree:
    """Labeled tree with an ordered proper 2-coloring (A, B)."""

    tree: LabeledTree
    a_first: bool = True   # A = color class of label 1 when True

    @property
    def class_a(self) -> frozenset[int]:
        c0, c1 = self.tree.color_classes()
        return c0 if self.a_first else c1

    @property
    def class_b(self) -> frozenset[int]:
        c0, c1 = self.tree.color_classes()
        return c1 if self.a_first else c0

    @property
    def roots(self) -> tuple[int, ...]:
        return self.tree.leaves

    def a_minus_r(self) -> int:
        return len(self.class_a - set(self.roots))

    def b_minus_r(self) -> int:
        return len(self.class_b - set(self.roots))

    def to_dict(self) -> dict:
        return {"num_vertices": self.tree.num_vertices,
                "edges": sorted(list(e) for e in self.tree.edges),
                "kind": self.tree.kind,
                "length_vector": list(self.tree.length_vector)
                if self.tree.length_vector else None,
                "a_first": self.a_first}

    @staticmethod
    def from_dict(data: dict) -> "OrientedTree":
        tree = LabeledTree.general(data["num_vertices"],
                                   [tuple(e) for e in data["edges"]])
        lv = data.get("length_vector")
        tree = LabeledTree(tree.num_vertices, tree.edges,
                           data.get("kind", "general"),
                           tuple(lv) if lv else None)
        return OrientedTree(tree, data["a_first"])


@dataclass(frozen=True)
class BalanceReport:
    alpha: Fraction
    balanced: bool
    failing_set: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {"alpha": str(self.alpha), "balanced": self.balanced,
                "failing_set": list(self.failing_set) if self.failing_set else None}


def _edge_count_meeting(tree: LabeledTree, s: set) -> int:
    return sum(1 for u, v in tree.edges if u in s or v in s)


def _internal_subsets(tree: LabeledTree):
    internal = sorted(set(tree.labels) - set(tree.leaves))
    for mask in range(1, 1 << len(internal)):
        yield {internal[i] for i in range(len(internal)) if mask >> i & 1}


def check_alpha_balanced(ot: OrientedTree, alpha) -> BalanceReport:
    """Exact balance verdict by subset enumeration.

    The inequality compares e(S) (alpha |A\\R| + |B\\R|) against
    (alpha |S&A| + |S&B|) e(T) in exact rationals; the first violating
    subset (by size, then lexicographically) is reported.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise PreconditionViolated("alpha must be positive")
    tree = ot.tree
    if tree.num_vertices > DEFAULT_SUBSET_GUARD:
        raise TooLarge("subset enumeration limited to 24 vertices")
    scale = alpha * ot.a_minus_r() + ot.b_minus_r()
    et = tree.num_edges
    subsets = sorted(_internal_subsets(tree), key=lambda s: (len(s), sorted(s)))
    for s in subsets:
        lhs = _edge_count_meeting(tree, s) * scale
        rhs = (alpha * len(s & ot.class_a) + len(s & ot.class_b)) * et
        if lhs < rhs:
            return BalanceReport(alpha, False, tuple(sorted(s)))
    return BalanceReport(alpha, True, None)


def reduced_balance_conditions(ot: OrientedTree) -> tuple[bool, bool]:
    """The two endpoint forms: e(S) >= |S| + (|R|-1)/|A\\R| |S&A| and the
    B-side analogue, checked for every internal subset."""
    tree = ot.tree
    roots = set(ot.roots)
    r = len(roots)
    a_ok = b_ok = True
    a_den, b_den = ot.a_minus_r(), ot.b_minus_r()
    for s in _internal_subsets(tree):
        es = _edge_count_meeting(tree, s)
        if a_den and Fraction(es) < len(s) + Fraction(r - 1, a_den) * len(s & ot.class_a):
            a_ok = False
        if b_den and Fraction(es) < len(s) + Fraction(r - 1, b_den) * len(s & ot.class_b):
            b_ok = False
    return a_ok, b_ok


@dataclass(frozen=True)
class RationalInterval:
    lower: Fraction
    upper: Fraction | None   # None marks an open upper end

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        lo = max(self.lower, other.lower)
        ups = [u for u in (self.upper, other.upper) if u is not None]
        return RationalInterval(lo, min(ups) if ups else None)

    def __contains__(self, alpha) -> bool:
        alpha = Fraction(alpha)
        return alpha >= self.lower and (self.upper is None or alpha <= self.upper)


def maximal_interval(ot: OrientedTree) -> RationalInterval:
    """Range of alpha on which the construction beats the trivial bound:
    [ |B\\R| / (|B\\R| + |R| - 1), (|A\\R| + |R| - 1) / |A\\R| ].

    A zero |A\\R| makes the upper end open (reported as None).
    """
    r = len(ot.roots)
    if r < 2:
        raise PreconditionViolated("need at least two roots")
    a_int, b_int = ot.a_minus_r(), ot.b_minus_r()
    lower = Fraction(b_int, b_int + r - 1)
    upper = Fraction(a_int + r - 1, a_int) if a_int else None
    return RationalInterval(lower, upper)


def balanced_interval_verified(ot: OrientedTree) -> RationalInterval:
    """Maximal interval together with endpoint verification.

    Balance at the two endpoints extends to the whole interval by the
    monotonicity of the balance ratio in alpha; an open upper end is
    covered by the limit form e(S) |A\\R| >= |S & A| e(T).
    """
    interval = maximal_interval(ot)
    if interval.lower > 0:
        report = check_alpha_balanced(ot, interval.lower)
        if not report.balanced:
            raise VerificationFailed("unbalanced at the lower endpoint",
                                     interval.lower, report.failing_set)
    if interval.upper is not None:
        report = check_alpha_balanced(ot, interval.upper)
        if not report.balanced:
            raise VerificationFailed("unbalanced at the upper endpoint",
                                     interval.upper, report.failing_set)
    else:
        tree = ot.tree
        a_int = ot.a_minus_r()
        for s in _internal_subsets(tree):
            if _edge_count_meeting(tree, s) * a_int < len(s & ot.class_a) * tree.num_edges:
                raise VerificationFailed("unbalanced in the open upper limit",
                                         None, tuple(sorted(s)))
    return interval


def compute_rho_ell(family, alpha) -> tuple[Fraction, int]:
    """rho = max over the family of (alpha |A\\R| + |B\\R|) / e(T);
    ell = least positive integer making ell/e(T) and alpha ell/e(T)
    integral for every tree."""
    if not family:
        raise PreconditionViolated("family must be nonempty")
    alpha = Fraction(alpha)
    rho = max((alpha * ot.a_minus_r() + ot.b_minus_r()) / ot.tree.num_edges
              for ot in family)
    ell = 1
    for ot in family:
        e = ot.tree.num_edges
        need = math.lcm(e, e * alpha.denominator
                        // math.gcd(alpha.numerator, e * alpha.denominator))
        ell = math.lcm(ell, need)
    return rho, ell


# ---------------------------------------------------------------------------
# Polynomials over prime fields


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


_MONOMIAL_CACHE: dict[tuple[int, int], list[tuple[int, ...]]] = {}


def _monomials(num_vars: int, degree: int) -> list[tuple[int, ...]]:
    cached = _MONOMIAL_CACHE.get((num_vars, degree))
    if cached is not None:
        return cached
    out = []

    def rec(prefix, left, pos):
        if pos == num_vars:
            out.append(tuple(prefix))
            return
        for d in range(left + 1):
            prefix.append(d)
            rec(prefix, left - d, pos + 1)
            prefix.pop()

    rec([], degree, 0)
    out.sort()
    _MONOMIAL_CACHE[(num_vars, degree)] = out
    return out


@dataclass(frozen=True)
class PrimePolynomial:
    """Dense polynomial over F_q with total degree at most `degree`."""

    q: int
    num_vars: int
    degree: int
    coeffs: tuple[int, ...]            # aligned with _monomials(num_vars, degree)

    def __post_init__(self):
        if not _is_prime(self.q):
            raise NotPrime(f"{self.q} is not prime")
        if any(not 0 <= c < self.q for c in self.coeffs):
            raise PreconditionViolated("coefficients must be reduced mod q")

    @staticmethod
    def random(q: int, num_vars: int, degree: int, rng: random.Random
               ) -> "PrimePolynomial":
        monos = _monomials(num_vars, degree)
        return PrimePolynomial(q, num_vars, degree,
                               tuple(rng.randrange(q) for _ in monos))

    @staticmethod
    def constant(q: int, num_vars: int, degree: int, value: int) -> "PrimePolynomial":
        monos = _monomials(num_vars, degree)
        coeffs = [0] * len(monos)
        coeffs[monos.index(tuple([0] * num_vars))] = value % q
        return PrimePolynomial(q, num_vars, degree, tuple(coeffs))

    def evaluate(self, point: tuple[int, ...]) -> int:
        monos = _monomials(self.num_vars, self.degree)
        total = 0
        for c, exps in zip(self.coeffs, monos):
            if c == 0:
                continue
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = term * pow(x, e, self.q) % self.q
            total = (total + term) % self.q
        return total


# ---------------------------------------------------------------------------
# Construction spec and sampling


@dataclass(frozen=True)
class ConstructionSpec:
    family: tuple[OrientedTree, ...]
    alpha: Fraction
    ell: int
    q: int
    rho: Fraction
    degree: int
    num_polys: int
    prune_c: int
    seed: int

    @staticmethod
    def from_family(family, alpha, q: int, seed: int, degree: int | None = None,
                    prune_c: int = 3) -> "ConstructionSpec":
        alpha = Fraction(alpha)
        rho, ell = compute_rho_ell(family, alpha)
        num_polys = rho * ell
        if num_polys.denominator != 1:
            raise PreconditionViolated("rho * ell must be integral")
        if (alpha * ell).denominator != 1:
            raise PreconditionViolated("alpha * ell must be integral")
        if degree is None:
            max_v = max(ot.tree.num_vertices for ot in family)
            k = 2 * ell * (1 + alpha) * max_v
            degree = min(DEFAULT_DEGREE_CAP, math.ceil(k * max_v))
            degree = max(degree, max(len(ot.roots) for ot in family) - 1)
        return ConstructionSpec(tuple(family), alpha, ell, q, rho,
                                int(degree), int(num_polys), prune_c, seed)

    def m_size(self) -> int:
        return self.q ** int(self.alpha * self.ell)

    def n_size(self) -> int:
        return self.q ** self.ell

    def edge_target(self) -> float:
        return 0.5 * float(self.q) ** (self.ell * float(1 + self.alpha - self.rho))

    def to_json(self) -> str:
        return json.dumps({
            "family": [ot.to_dict() for ot in self.family],
            "alpha": str(self.alpha), "ell": self.ell, "q": self.q,
            "rho": str(self.rho), "degree": self.degree,
            "num_polys": self.num_polys, "prune_c": self.prune_c,
            "seed": self.seed,
        }, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ConstructionSpec":
        data = json.loads(text)
        return ConstructionSpec(
            tuple(OrientedTree.from_dict(d) for d in data["family"]),
            Fraction(data["alpha"]), data["ell"], data["q"],
            Fraction(data["rho"]), data["degree"], data["num_polys"],
            data["prune_c"], data["seed"])


def _digits(index: int, width: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(index % q)
        index //= q
    return tuple(out)


def edges_from_polynomials(q: int, ell: int, alpha, polys,
                           pair_guard: int = DEFAULT_PAIR_GUARD) -> BipartiteGraph:
    """Bipartite graph on all alpha*ell-tuples vs ell-tuples over F_q with
    an edge where every polynomial vanishes on the concatenated point."""
    alpha = Fraction(alpha)
    a_len = int(alpha * ell)
    m, n = q ** a_len, q ** ell
    if m * n > pair_guard:
        raise TooLarge(f"{m} x {n} pairs exceed the guard")
    edges = []
    points_m = [_digits(i, a_len, q) for i in range(m)]
    points_n = [_digits(i, ell, q) for i in range(n)]
    for i, pa in enumerate(points_m):
        for j, pb in enumerate(points_n):
            point = pa + pb
            if all(f.evaluate(point) == 0 for f in polys):
                edges.append((i, m + j))
    return BipartiteGraph.build(range(m), range(m, m + n), edges)


def sample_construction(spec: ConstructionSpec,
                        pair_guard: int = DEFAULT_PAIR_GUARD) -> BipartiteGraph:
    """Sample the random-polynomial construction, deterministic in the seed."""
    if not _is_prime(spec.q):
        raise NotPrime(f"{spec.q} is not prime")
    rng = random.Random(spec.seed)
    num_vars = int((1 + spec.alpha) * spec.ell)
    polys = [PrimePolynomial.random(spec.q, num_vars, spec.degree, rng)
             for _ in range(spec.num_polys)]
    return edges_from_polynomials(spec.q, spec.ell, spec.alpha, polys, pair_guard)


# ---------------------------------------------------------------------------
# Bad-root pruning


def count_rooted_copies(g: BipartiteGraph, ot: OrientedTree,
                        root_images: tuple[int, ...]) -> int:
    """Copies of the oriented tree with the ordered root vector pinned,
    class A in M, class B in N, and internal images distinct and
    disjoint from the roots."""
    tree = ot.tree
    roots = ot.roots
    img = {}
    for label, vertex in zip(roots, root_images):
        side_ok = vertex in (g.part_m if label in ot.class_a else g.part_n)
        if not side_ok:
            return 0
        img[label] = vertex
    if len(set(root_images)) != len(root_images):
        return 0
    # tree edges joining two pinned roots must already be host edges
    for u, v in tree.edges:
        if u in img and v in img and not g.graph.has_edge(img[u], img[v]):
            return 0

    # placement order: BFS from the pinned roots across the tree
    order = []
    seen = set(roots)
    frontier = list(roots)
    while frontier:
        nxt = []
        for v in frontier:
            for u in tree.adj[v]:
                if u not in seen:
                    seen.add(u)
                    order.append(u)
                    nxt.append(u)
        frontier = nxt

    used = set(root_images)
    count = 0

    def place(i: int):
        nonlocal count
        if i == len(order):
            count += 1
            return
        label = order[i]
        placed_nbrs = [u for u in tree.adj[label] if u in img]
        first = img[placed_nbrs[0]]
        side = g.part_m if label in ot.class_a else g.part_n
        for v in g.adj(first):
            if v in used or v not in side:
                continue
            if any(not g.graph.has_edge(v, img[u]) for u in placed_nbrs[1:]):
                continue
            img[label] = v
            used.add(v)
            place(i + 1)
            used.discard(v)
            del img[label]

    place(0)
    return count


def _root_tuples(g: BipartiteGraph, ot: OrientedTree):
    sides = [sorted(g.part_m if r in ot.class_a else g.part_n) for r in ot.roots]
    return product(*sides)


def prune_bad_roots(g: BipartiteGraph, ot: OrientedTree, c: int,
                    tuple_guard: int = 1_000_000) -> BipartiteGraph:
    """Delete vertices (all edges at the lowest-index member of a bad root
    tuple) until every root tuple hosts fewer than `c` copies."""
    if c < 1:
        raise PreconditionViolated("need c >= 1")
    total = 1
    for r in ot.roots:
        total *= (g.m_size if r in ot.class_a else g.n_size)
    if total > tuple_guard:
        raise TooLarge(f"{total} root tuples exceed the guard")

    current = g
    while True:
        bad = None
        for z in _root_tuples(current, ot):
            if len(set(z)) != len(z):
                continue
            if count_rooted_copies(current, ot, z) >= c:
                bad = z
                break
        if bad is None:
            return current
        victim = min(bad)
        drop = [(victim, u) for u in current.adj(victim)]
        current = current.without_edges(drop)


# ---------------------------------------------------------------------------
# Union-of-copies oracle


def enumerate_unions(ot: OrientedTree, p: int):
    """All unions of p distinct copies of the tree sharing one root vector.

    Vertices are abstract: roots get ids 0..|R|-1 (in leaf order),
    internals get fresh ids in a canonical restricted-growth order.
    Yields (edge set, id -> class map). Duplicate gluings that produce
    the same edge set are collapsed.
    """
    tree = ot.tree
    if p > 3 or tree.num_vertices > 8:
        raise TooLarge("union enumeration limited to p <= 3, v(T) <= 8")
    roots = ot.roots
    internal = sorted(set(tree.labels) - set(roots))
    root_id = {r: i for i, r in enumerate(roots)}
    eclass = {i: ("A" if r in ot.class_a else "B") for i, r in enumerate(roots)}

    def copy_edges(assign: dict) -> frozenset:
        full = dict(assign)
        full.update(root_id)
        return frozenset((min(full[u], full[v]), max(full[u], full[v]))
                         for u, v in tree.edges)

    def gen_assignments(existing_classes: dict):
        """All class-consistent injective placements of the internals."""
        ids = sorted(existing_classes)
        nxt = (max(ids) + 1) if ids else 0

        def rec(i, assign, used, fresh_next):
            if i == len(internal):
                yield dict(assign)
                return
            lab = internal[i]
            cls = "A" if lab in ot.class_a else "B"
            for vid in ids:
                if vid >= len(roots) and vid not in used \
                        and existing_classes[vid] == cls:
                    assign[lab] = vid
                    used.add(vid)
                    yield from rec(i + 1, assign, used, fresh_next)
                    used.discard(vid)
                    del assign[lab]
            assign[lab] = fresh_next
            used.add(fresh_next)
            yield from rec(i + 1, assign, used, fresh_next + 1)
            used.discard(fresh_next)
            del assign[lab]

        yield from rec(0, {}, set(), nxt)

    seen = set()

    def build(copies, classes, assignments):
        if len(copies) == p:
            edges = frozenset().union(*copies)
            if edges not in seen:
                seen.add(edges)
                yield edges, dict(classes)
            return
        for assign in gen_assignments(classes):
            if assign in assignments:   # copies must be distinct maps
                continue
            new_classes = dict(classes)
            for lab, vid in assign.items():
                new_classes[vid] = "A" if lab in ot.class_a else "B"
            yield from build(copies + [copy_edges(assign)], new_classes,
                             assignments + [assign])

    yield from build([], dict(eclass), [])


def min_union_edges(ot: OrientedTree, p: int, alpha=None):
    """Minimum edge count over unions of p root-sharing copies, plus the
    per-union check of the balanced-tree edge bound when alpha is given.

    Returns (min_edges, attaining edge set, all_bounds_hold_or_None).
    """
    if p < 1:
        raise PreconditionViolated("need p >= 1")
    tree = ot.tree
    best = None
    best_edges = None
    all_ok = None if alpha is None else True
    alpha = None if alpha is None else Fraction(alpha)
    scale = None
    if alpha is not None:
        scale = alpha * ot.a_minus_r() + ot.b_minus_r()
    r = len(ot.roots)
    for edges, classes in enumerate_unions(ot, p):
        e_h = len(edges)
        if best is None or e_h < best:
            best, best_edges = e_h, edges
        if alpha is not None:
            a_h = sum(1 for vid, c in classes.items() if c == "A" and vid >= r)
            b_h = sum(1 for vid, c in classes.items() if c == "B" and vid >= r)
            if Fraction(e_h) * scale < (alpha * a_h + b_h) * tree.num_edges:
                all_ok = False
    return best, best_edges, all_ok


# ---------------------------------------------------------------------------
# Named construction presets


def preset_family(name: str, k: int, s: int = 2) -> tuple[list[OrientedTree],
                                                          RationalInterval, dict]:
    """Oriented-tree family, admissible alpha interval, and the freeness
    pattern parameters for the four named constructions."""
    if name == "theta-odd":
        if k < 2:
            raise PreconditionViolated("theta-odd needs k >= 2")
        tree = LabeledTree.path(2 * k - 1)
        fam = [OrientedTree(tree, True), OrientedTree(tree, False)]
        interval = RationalInterval(Fraction(k - 1, k), Fraction(1))
        pattern = {"kind": "theta", "k": 2 * k - 1}
    elif name == "theta-even":
        if k < 1:
            raise PreconditionViolated("theta-even needs k >= 1")
        shorter = LabeledTree.path(2 * k - 1)
        longer = LabeledTree.path(2 * k)
        fam = [OrientedTree(longer, True), OrientedTree(longer, False),
               OrientedTree(shorter, True)]
        interval = RationalInterval(Fraction(k, k + 1), Fraction(1))
        pattern = {"kind": "theta", "k": 2 * k}
    elif name == "kst-odd":
        if k < 1 or s < 2:
            raise PreconditionViolated("kst-odd needs k >= 1 and s >= 2")
        tree = LabeledTree.spider([2 * k + 1] * s)
        fam = [OrientedTree(tree, True), OrientedTree(tree, False)]
        interval = RationalInterval(Fraction(k * s + 1, k * s + s), Fraction(1))
        pattern = {"kind": "kst-subdivision", "s": s, "k": 2 * k + 1}
    elif name == "kst-even":
        if k < 1 or s < 2:
            raise PreconditionViolated("kst-even needs k >= 1 and s >= 2")
        tree = LabeledTree.spider([2 * k] * s)
        fam = [OrientedTree(tree, True), OrientedTree(tree, False)]
        interval = RationalInterval(Fraction(k * s, k * s + s - 1), Fraction(1))
        pattern = {"kind": "kst-subdivision", "s": s, "k": 2 * k}
    else:
        raise PreconditionViolated(f"unknown preset {name!r}")
    return fam, interval, pattern


def lower_bound_report(preset: str, k: int, s: int, alpha, q: int, seed: int,
                       trials: int, prune_c: int = 3, degree: int | None = None,
                       check_freeness: bool = True,
                       freeness_guard: int = 2_000_000) -> dict:
    """Run the named construction over several seeds and report realized
    edge counts against the q^(ell (1+alpha-rho))/2 target, with an
    optional pattern-freeness certification of each pruned graph."""
    from . import finders

    alpha = Fraction(alpha)
    family, interval, pattern = preset_family(preset, k, s)
    if alpha not in interval:
        raise PreconditionViolated(
            f"alpha {alpha} outside the admissible interval "
            f"[{interval.lower}, {interval.upper}]")
    spec = ConstructionSpec.from_family(family, alpha, q, seed,
                                        degree=degree, prune_c=prune_c)
    trials_out = []
    for i in range(trials):
        child = ConstructionSpec(spec.family, spec.alpha, spec.ell, spec.q,
                                 spec.rho, spec.degree, spec.num_polys,
                                 spec.prune_c, seed + i)
        g = sample_construction(child)
        raw_edges = g.e
        pruned = g
        for ot in family:
            pruned = prune_bad_roots(pruned, ot, prune_c)
        entry = {"seed": child.seed, "raw_edges": raw_edges,
                 "pruned_edges": pruned.e}
        if check_freeness:
            kind = pattern["kind"]
            if kind == "theta":
                fspec = finders.PatternSpec("theta", s=prune_c, k=pattern["k"])
            else:
                fspec = finders.PatternSpec("kst-subdivision", s=pattern["s"],
                                            t=prune_c, k=pattern["k"], r=1)
            try:
                witness = finders.find_pattern(pruned, fspec, guard=freeness_guard)
                entry["free"] = witness is None
            except (CeilingHit, TooLarge):
                entry["free"] = None   # inconclusive within the guard
        trials_out.append(entry)

    mean_raw = sum(t["raw_edges"] for t in trials_out) / max(1, trials)
    return {
        "preset": preset, "k": k, "s": s, "alpha": str(alpha), "q": q,
        "ell": spec.ell, "rho": str(spec.rho), "num_polys": spec.num_polys,
        "degree": spec.degree, "prune_c": prune_c,
        "m": spec.m_size(), "n": spec.n_size(),
        "edge_target": spec.edge_target(),
        "expected_raw_edges": spec.m_size() * spec.n_size()
        * float(spec.q) ** (-spec.num_polys),
        "mean_raw_edges": mean_raw,
        "trials": trials_out,
    }
