"""Heavy/light path machinery: minimal heavy sub-copies, linked-tuple
certification, robust subfamily extraction, the re-embedding walks that
turn robustness into path and spider linkage, and the light-2-path
collection used for building long paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .errors import (AssemblyFailed, ExtensionFailed, InternalInvariantBroken,
                     NotHeavy, PreconditionViolated)
from .families import EmbeddingFamily, Member, enumerate_copies, heavy_threshold, \
    is_admissible, is_heavy
from .finders import PatternSpec, Witness, verify_witness
from .graphs import BipartiteGraph, Graph, peel_to_min_degree
from .trees import LabeledTree


# ---------------------------------------------------------------------------
# Explicit constants of the quantitative statements


def robust_removal_degree(eps: float, mu: float, eta: int, a: int, b: int,
                          t: int) -> float:
    """Minimum-degree demand for the quantitative robust-subfamily claim:
    (a+b) (2 mu)^(a+b) eta^(t^2+1) / eps^2."""
    return (a + b) * (2.0 * mu) ** (a + b) * float(eta) ** (t * t + 1) / eps ** 2


def bucket_epsilon(alpha: float, beta: float) -> float:
    """Thin/thick cutoff coefficient (2^(alpha+beta-1) - 1)/2."""
    return (2.0 ** (alpha + beta - 1.0) - 1.0) / 2.0


def subdivision_eta(k: int, r: int, s: int, t: int) -> int:
    """Heaviness level 4 k^2 r s t used by the upper-bound argument."""
    return 4 * k * k * r * s * t


def subdivision_epsilon(mu: float, k: int, s: int) -> float:
    """Counting slack 1 / (4 (8 mu)^(2ks))."""
    return 1.0 / (4.0 * (8.0 * mu) ** (2 * k * s))


def light_collection_h(p: int, k: int, r: int) -> int:
    return p ** 4 * k * k * r * r


def light_collection_q(p: int, k: int, r: int) -> int:
    return p * p * k * r


def light_collection_gamma(k: int, mu: float, p: int, r: int) -> float:
    h = light_collection_h(p, k, r)
    q = light_collection_q(p, k, r)
    return 0.25 * (1.0 / (64.0 * h * q * mu)) ** (k // 2)


# ---------------------------------------------------------------------------
# Minimal heavy sub-copies


def count_paths_between(g, a: int, b: int, length: int) -> int:
    """Number of simple a..b paths with exactly `length` edges."""
    base = g.graph if isinstance(g, BipartiteGraph) else g
    if a == b:
        return 0
    if length == 2:
        na, nb = base.adj[a], base.adj[b]
        if len(na) > len(nb):
            na, nb = nb, na
        nb_set = set(nb)
        return sum(1 for v in na if v in nb_set)
    count = 0
    on_path = {a}

    def step(v: int, left: int):
        nonlocal count
        for u in base.adj[v]:
            if u == b:
                if left == 1:
                    count += 1
                continue
            if u not in on_path and left > 1:
                on_path.add(u)
                step(u, left - 1)
                on_path.discard(u)

    step(a, length)
    return count


def path_pair_heavy(g, a: int, b: int, length: int, eta: int) -> bool:
    return count_paths_between(g, a, b, length) >= heavy_threshold(eta, length)


def find_admissible_subpath(g, tree: LabeledTree, member: Member, eta: int
                            ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Minimal heavy subpath of a heavy path copy; minimality makes it
    admissible. Returns (labels, images) of the projection.

    Candidates are scanned shortest first, lowest start index first.
    """
    if tree.kind != "path":
        raise PreconditionViolated("expected a path copy")
    ell = tree.num_edges
    if ell < 2:
        raise PreconditionViolated("need a path of length >= 2")
    if not path_pair_heavy(g, member[0], member[-1], ell, eta):
        raise NotHeavy("the given copy is not heavy")
    for j in range(2, ell + 1):
        for i in range(0, ell - j + 1):
            if path_pair_heavy(g, member[i], member[i + j], j, eta):
                labels = tuple(range(i + 1, i + j + 2))
                return labels, tuple(member[i:i + j + 1])
    raise InternalInvariantBroken("heavy copy lost its own heaviness")


def _spider_leg_labels(tree: LabeledTree) -> list[list[int]]:
    """Labels along each leg, center excluded, in order outward."""
    assert tree.kind == "spider"
    legs = []
    nxt = 2
    for ell in tree.length_vector:
        legs.append(list(range(nxt, nxt + ell)))
        nxt += ell
    return legs


def member_has_heavy_subpath(g, tree: LabeledTree, member: Member, eta: int,
                             max_len: int, _cache: dict | None = None) -> bool:
    """Does the copy contain an eta-heavy j-path (2 <= j <= max_len) of the host?"""
    cache = _cache if _cache is not None else {}
    # tree paths between every label pair at distance 2..max_len
    dist = _tree_distances(tree)
    for u in tree.labels:
        for v in tree.labels:
            if u < v and 2 <= dist[u, v] <= max_len:
                key = (member[u - 1], member[v - 1], dist[u, v])
                hit = cache.get(key)
                if hit is None:
                    hit = path_pair_heavy(g, key[0], key[1], key[2], eta)
                    cache[key] = hit
                if hit:
                    return True
    return False


def _tree_distances(tree: LabeledTree) -> dict:
    dist = {}
    for src in tree.labels:
        dist[src, src] = 0
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for u in tree.adj[v]:
                    if (src, u) not in dist:
                        dist[src, u] = dist[src, v] + 1
                        nxt.append(u)
            frontier = nxt
    return dist


def find_admissible_subspider(fam: EmbeddingFamily, member: Member, eta: int
                              ) -> tuple[frozenset[int], tuple[int, ...], tuple[int, ...]]:
    """Minimal heavy s-legged subspider projection of a heavy spider copy.

    Requires that no member of the family contains a heavy j-path of the
    host (2 <= j <= k). The result is heavy and admissible in the
    projected family, its leg lengths pairwise sum to more than k, and
    at most one leg has length one (asserted). Returns (labels, images,
    length vector).
    """
    tree = fam.tree
    if tree.kind != "spider":
        raise PreconditionViolated("expected a spider family")
    lengths = tree.length_vector
    k = lengths[0]
    if any(x != k for x in lengths):
        raise PreconditionViolated("legs must all have length k")
    s = len(lengths)

    cache: dict = {}
    for m in fam.members:
        if member_has_heavy_subpath(fam.host, tree, m, eta, k, cache):
            raise PreconditionViolated("a member contains a heavy host path")
    if not is_heavy(fam, member, eta):
        raise NotHeavy("the given copy is not heavy in the family")

    legs = _spider_leg_labels(tree)
    vectors = sorted(product(range(1, k + 1), repeat=s),
                     key=lambda v: (sum(v), v))
    for vec in vectors:
        labels = frozenset([1] + [x for leg, ell in zip(legs, vec)
                                  for x in leg[:ell]])
        counts = fam.distinct_projection_counts(labels)
        leaf_labels = tree.induced_leaves(labels)
        lv = tuple(member[x - 1] for x in leaf_labels)
        if counts.get(lv, 0) >= heavy_threshold(eta, len(labels) - 1):
            for i in range(s):
                for j in range(i + 1, s):
                    if vec[i] + vec[j] <= k:
                        raise InternalInvariantBroken(
                            "minimal heavy subspider has a short leg pair")
            if sum(1 for x in vec if x == 1) > 1:
                raise InternalInvariantBroken(
                    "minimal heavy subspider has two unit legs")
            sub_tree, relabel = tree.sub_tree(labels)
            order = sorted(labels)
            proj_members = sorted({tuple(m[x - 1] for x in order)
                                   for m in fam.members})
            proj_fam = EmbeddingFamily(sub_tree, fam.host, tuple(proj_members))
            proj_member = tuple(member[x - 1] for x in order)
            if not is_admissible(proj_fam, proj_member, eta):
                raise InternalInvariantBroken(
                    "minimal heavy subspider is not admissible")
            return labels, proj_member, vec
    raise InternalInvariantBroken("heavy member lost its own heaviness")


# ---------------------------------------------------------------------------
# Linked tuples


@dataclass(frozen=True)
class Refusal:
    """Typed negative result of a linkage certification."""

    reason: str
    family_size: int
    threshold_doubled: int   # compare 2*family_size against h^(t^2)
    packed: int


def _internal_labels(tree: LabeledTree) -> tuple[int, ...]:
    leaf_set = set(tree.leaves)
    return tuple(v for v in tree.labels if v not in leaf_set)


def disjoint_members(fam, lv: tuple[int, ...], count: int,
                     avoid: set | None = None) -> list[Member] | None:
    """Greedy packing of `count` members with leaf vector `lv`, pairwise
    vertex-disjoint outside the leaf image (optionally avoiding `avoid`
    on non-leaf vertices)."""
    internals = _internal_labels(fam.tree)
    used: set = set(avoid or ())
    out: list[Member] = []
    for m in fam.members_with_leaf_vector(lv):
        imgs = [m[v - 1] for v in internals]
        if any(x in used for x in imgs):
            continue
        used.update(imgs)
        out.append(m)
        if len(out) == count:
            return out
    return None


def certify_linked(fam, leaf_image: tuple[int, ...], h: int
                   ) -> tuple[Member, ...] | Refusal:
    """h members sharing the leaf image, pairwise disjoint elsewhere.

    Succeeds by greedy maximal packing whenever the family holds at
    least h^(t^2)/2 members with that leaf vector (t = e(T)); smaller
    families refuse with the counting report.
    """
    if h < 2:
        raise PreconditionViolated("need h >= 2")
    t = fam.tree.num_edges
    size = fam.leaf_vector_multiplicity(leaf_image)
    threshold = heavy_threshold(h, t)
    packed = disjoint_members(fam, leaf_image, h)
    if packed is not None:
        return tuple(packed)
    found = disjoint_members(fam, leaf_image, size) or []
    if 2 * size < threshold:
        return Refusal("family below the h^(t^2)/2 counting threshold",
                       size, threshold, len(found))
    return Refusal("greedy packing exhausted despite the counting threshold "
                   "(admissibility precondition likely violated)",
                   size, threshold, len(found))


# ---------------------------------------------------------------------------
# Robust subfamily extraction


@dataclass(frozen=True)
class RemovalReport:
    initial_size: int
    final_size: int
    type_one_removed: int
    type_two_removed: int
    #: statement-side comparison: removed <= eps e(G) d_M^(b-1) d_N^(a-1)
    statement_bound: float | None = None
    statement_ok: bool | None = None
    #: proof-side comparison: removed <= eps |F|
    fraction_bound: float | None = None
    fraction_ok: bool | None = None


def extract_robust(fam: EmbeddingFamily, eta: int, bound_check=None
                   ) -> tuple[EmbeddingFamily, RemovalReport]:
    """Run the removal process to a fixpoint.

    Type one removes every projection group with fewer than eta distinct
    one-vertex extensions; type two removes leaf-vector groups below
    eta^(t^2)/2 members. `bound_check`, when given, is
    (eps, e_host, d_m, d_n, a, b) and only fills the report comparisons;
    nothing is asserted.
    """
    if eta < 2:
        raise PreconditionViolated("need eta >= 2")
    tree = fam.tree
    members = fam.members
    alive = set(range(len(members)))
    pairs = tree.extension_pairs()
    t2_threshold = heavy_threshold(eta, tree.num_edges)
    removed_one = removed_two = 0

    changed = True
    while changed:
        changed = False
        for t1_labels, w in pairs:
            order = sorted(t1_labels)
            groups: dict[tuple, tuple[set, list]] = {}
            for i in alive:
                m = members[i]
                key = tuple(m[v - 1] for v in order)
                entry = groups.setdefault(key, (set(), []))
                entry[0].add(m[w - 1])
                entry[1].append(i)
            for key in sorted(groups):
                images, idxs = groups[key]
                if len(images) < eta:
                    for i in idxs:
                        alive.discard(i)
                        removed_one += 1
                    changed = True
        lv_groups: dict[tuple, list] = {}
        for i in alive:
            lv_groups.setdefault(fam.leaf_vector(members[i]), []).append(i)
        for lv in sorted(lv_groups):
            idxs = lv_groups[lv]
            if 2 * len(idxs) < t2_threshold:
                for i in idxs:
                    alive.discard(i)
                    removed_two += 1
                changed = True

    survivors = tuple(members[i] for i in sorted(alive))
    removed = removed_one + removed_two
    stmt_bound = stmt_ok = frac_bound = frac_ok = None
    if bound_check is not None:
        eps, e_host, d_m, d_n, a, b = bound_check
        stmt_bound = eps * e_host * float(d_m) ** (b - 1) * float(d_n) ** (a - 1)
        stmt_ok = removed <= stmt_bound
        frac_bound = eps * len(members)
        frac_ok = removed <= frac_bound
    report = RemovalReport(len(members), len(survivors), removed_one,
                           removed_two, stmt_bound, stmt_ok, frac_bound, frac_ok)
    return fam.subfamily(survivors), report


def verify_robust(fam, eta: int) -> tuple[bool, str]:
    """Direct recheck of both robustness conditions.

    Every leaf vector must admit eta pairwise-disjoint members, and
    every one-vertex extension of every present projection must have at
    least eta distinct images.
    """
    if hasattr(fam, "structural_robustness"):
        return fam.structural_robustness(eta)
    tree = fam.tree
    for lv in sorted(fam.leaf_vectors()):
        if disjoint_members(fam, lv, eta) is None:
            return False, f"leaf vector {lv} is not linked at level {eta}"
    for t1_labels, w in tree.extension_pairs():
        order = sorted(t1_labels)
        groups: dict[tuple, set] = {}
        for m in fam.members:
            groups.setdefault(tuple(m[v - 1] for v in order), set()).add(m[w - 1])
        for key in sorted(groups):
            if len(groups[key]) < eta:
                return False, (f"projection {key} on {sorted(t1_labels)} has "
                               f"{len(groups[key])} extensions at label {w}")
    return True, "ok"


# ---------------------------------------------------------------------------
# Implicit product-structured families (engineered hosts)


@dataclass
class ProductEmbeddingFamily:
    """Family of all pool-respecting copies of a tree.

    Each label owns a pool of host vertices; the pools are pairwise
    disjoint and the host carries complete bipartite blocks between the
    pools of adjacent labels, so every choice of one vertex per label is
    a member. Extension images are whole pools, which makes the family
    structurally robust at any level up to the minimum pool size.
    Nothing is materialized; sizes of order pool^v(T) stay implicit.
    """

    tree: LabeledTree
    host: BipartiteGraph
    pools: dict[int, tuple[int, ...]]

    @staticmethod
    def build(tree: LabeledTree, pool_size: int) -> "ProductEmbeddingFamily":
        class_a, _ = tree.color_classes()
        pools = {}
        nxt = 0
        for v in tree.labels:
            pools[v] = tuple(range(nxt, nxt + pool_size))
            nxt += pool_size
        part_m = [x for v in tree.labels if v in class_a for x in pools[v]]
        part_n = [x for v in tree.labels if v not in class_a for x in pools[v]]
        edges = []
        for u, v in sorted(tree.edges):
            edges.extend((x, y) for x in pools[u] for y in pools[v])
        host = BipartiteGraph.build(part_m, part_n, edges)
        return ProductEmbeddingFamily(tree, host, pools)

    @property
    def leaf_labels(self) -> tuple[int, ...]:
        return self.tree.leaves

    def leaf_vector(self, member: Member) -> tuple[int, ...]:
        return tuple(member[v - 1] for v in self.leaf_labels)

    def project(self, labels: frozenset[int], member: Member) -> tuple[int, ...]:
        return tuple(member[v - 1] for v in sorted(labels))

    def canonical_member(self) -> Member:
        return tuple(self.pools[v][0] for v in self.tree.labels)

    def member_count(self) -> int:
        out = 1
        for v in self.tree.labels:
            out *= len(self.pools[v])
        return out

    def contains(self, member: Member) -> bool:
        return all(member[v - 1] in self.pools[v] for v in self.tree.labels)

    def members_with_leaf_vector(self, lv: tuple[int, ...]):
        leaf_pos = {v: i for i, v in enumerate(self.leaf_labels)}
        for v, i in leaf_pos.items():
            if lv[i] not in set(self.pools[v]):
                return
        internals = [v for v in self.tree.labels if v not in leaf_pos]
        for choice in product(*(self.pools[v] for v in internals)):
            img = [0] * self.tree.num_vertices
            for v, i in leaf_pos.items():
                img[v - 1] = lv[i]
            for v, x in zip(internals, choice):
                img[v - 1] = x
            yield tuple(img)

    def leaf_vector_multiplicity(self, lv: tuple[int, ...]) -> int:
        leaf_pos = {v: i for i, v in enumerate(self.leaf_labels)}
        for v, i in leaf_pos.items():
            if lv[i] not in set(self.pools[v]):
                return 0
        out = 1
        for v in self.tree.labels:
            if v not in leaf_pos:
                out *= len(self.pools[v])
        return out

    def extension_images(self, t1_labels: frozenset[int], proj: Member,
                         new_label: int) -> tuple[int, ...]:
        order = sorted(t1_labels)
        if any(x not in set(self.pools[v]) for v, x in zip(order, proj)):
            return ()
        return self.pools[new_label]

    def structural_robustness(self, eta: int) -> tuple[bool, str]:
        short = min(len(p) for p in self.pools.values())
        if short < eta:
            return False, f"smallest pool has {short} < {eta} vertices"
        return True, "ok"


# ---------------------------------------------------------------------------
# Robust re-embedding walks and linkage


def _replace(member: Member, label: int, vertex: int) -> Member:
    out = list(member)
    out[label - 1] = vertex
    return tuple(out)


def robust_extend(fam, eta: int, member: Member, leaf_label: int, t: int,
                  avoid, odd: bool = False, anchor: int | None = None
                  ) -> tuple[Member, list[int]]:
    """Re-embed one leaf through a robust family, producing a detour path.

    Even variant: returns (member', path) where path has length 2t, runs
    from the leaf's current image to its new one, and avoids `avoid`,
    the other leaf images, and the leaf's tree-neighbor image. Odd
    variant: path of length 2t+1 from the neighbor image (or from
    `anchor` when given; the first hop then needs a host edge from the
    anchor, which structured hosts always provide).
    """
    tree = fam.tree
    if leaf_label not in tree.leaves:
        raise PreconditionViolated(f"label {leaf_label} is not a leaf")
    if eta < len(avoid) + 2 * t + 2:
        raise PreconditionViolated("need eta >= |avoid| + 2t + 2")
    u = tree.neighbor_of_leaf(leaf_label)
    host = fam.host
    base = host.graph if isinstance(host, BipartiteGraph) else host
    rest = frozenset(tree.labels) - {leaf_label}

    start_anchor = member[u - 1] if anchor is None else anchor
    blocked = set(avoid)
    blocked.update(member[v - 1] for v in tree.leaves)
    blocked.add(member[u - 1])
    blocked.add(start_anchor)

    cur = member
    if odd:
        proj = fam.project(rest, cur)
        choice = None
        for y in fam.extension_images(rest, proj, leaf_label):
            if y not in blocked and base.has_edge(start_anchor, y):
                choice = y
                break
        if choice is None:
            raise ExtensionFailed("no fresh first hop for the odd detour")
        cur = _replace(cur, leaf_label, choice)
        path = [start_anchor, choice]
        blocked.add(choice)
    else:
        path = [cur[leaf_label - 1]]

    for _ in range(t):
        lv = fam.leaf_vector(cur)
        swap = None
        for m2 in fam.members_with_leaf_vector(lv):
            if m2[u - 1] not in blocked:
                swap = m2
                break
        if swap is None:
            raise ExtensionFailed("no member with a fresh attachment")
        x_new = swap[u - 1]
        blocked.add(x_new)
        proj = fam.project(rest, swap)
        y_new = None
        for y in fam.extension_images(rest, proj, leaf_label):
            if y not in blocked:
                y_new = y
                break
        if y_new is None:
            raise ExtensionFailed("no fresh re-embedding of the leaf")
        blocked.add(y_new)
        cur = _replace(swap, leaf_label, y_new)
        path.extend([x_new, y_new])
    return cur, path


@dataclass
class PathLinkage:
    """Linked endpoint pair with an on-demand path producer.

    produce(W) returns a path of exactly k edges (k+1 vertices) between
    the endpoints, internally disjoint from W, for any |W| <= k*h.
    """

    endpoints: tuple[int, int]
    k: int
    h: int

    def __post_init__(self):
        self._produce = None

    def produce(self, banned) -> tuple[int, ...]:
        return self._produce(banned)


def path_linkage(fam, member: Member, k: int, h: int) -> PathLinkage:
    """Linked endpoints of a path copy inside a robust family of j-paths.

    The family must be (2kh)-robust; when k and j differ in parity the
    copy drops its last vertex first.
    """
    tree = fam.tree
    if tree.kind != "path":
        raise PreconditionViolated("path linkage needs a path family")
    j = tree.num_edges
    if not (2 <= j <= k):
        raise PreconditionViolated("need 2 <= j <= k")
    if h < 2:
        raise PreconditionViolated("need h >= 2")
    eta = 2 * k * h
    host = fam.host
    internals = _internal_labels(tree)
    last_leaf = tree.leaves[-1]

    same_parity = (k - j) % 2 == 0
    if same_parity:
        endpoints = (member[0], member[last_leaf - 1])
        t_ext = (k - j) // 2
    else:
        endpoints = (member[0], member[tree.neighbor_of_leaf(last_leaf) - 1])
        t_ext = (k - j - 1) // 2

    def produce(banned) -> tuple[int, ...]:
        banned = set(banned)
        if len(banned) > k * h:
            raise PreconditionViolated("avoid set exceeds the k*h budget")
        if endpoints[0] in banned or endpoints[1] in banned:
            raise PreconditionViolated("avoid set contains an endpoint")
        if same_parity:
            cur, detour = robust_extend(fam, eta, member, last_leaf, t_ext, banned)
        else:
            cur, detour = robust_extend(fam, eta, member, last_leaf, t_ext,
                                        banned, odd=True)
        off_limits = banned | set(detour) | set(endpoints)
        final = None
        for m2 in fam.members_with_leaf_vector(fam.leaf_vector(cur)):
            if all(m2[v - 1] not in off_limits for v in internals):
                final = m2
                break
        if final is None:
            raise ExtensionFailed("no member clear of the detour and avoid set")
        seq = list(final)  # path labels are consecutive, so images are ordered
        full = seq + list(reversed(detour))[1:]
        _check_path(host, full, k, endpoints, banned)
        return tuple(full)

    link = PathLinkage(endpoints, k, h)
    link._produce = produce
    return link


def _check_path(host, seq, k: int, endpoints, banned):
    base = host.graph if isinstance(host, BipartiteGraph) else host
    if len(seq) != k + 1 or len(set(seq)) != len(seq):
        raise InternalInvariantBroken("assembled walk is not a simple k-path")
    if (seq[0], seq[-1]) != endpoints:
        raise InternalInvariantBroken("assembled path has wrong endpoints")
    if any(v in banned for v in seq[1:-1]):
        raise InternalInvariantBroken("assembled path hits the avoid set")
    for u, v in zip(seq, seq[1:]):
        if not base.has_edge(u, v):
            raise InternalInvariantBroken("assembled path uses a non-edge")


def spider_linkage(fam, member: Member, k: int, t: int) -> Witness:
    """Copy of the k-subdivided K_{s,t} grown from a robust spider family.

    Legs of the given copy are extended to length k by re-embedding
    walks (anchored at the parity-adjusted branch vertices), then t
    internally disjoint augmented copies are collected greedily. The
    output is independently verified as a pattern witness.
    """
    tree = fam.tree
    if tree.kind != "spider":
        raise PreconditionViolated("spider linkage needs a spider family")
    lengths = tree.length_vector
    s = len(lengths)
    if any(not 1 <= ell <= k for ell in lengths):
        raise PreconditionViolated("leg lengths must lie in [1, k]")
    if sum(1 for ell in lengths if ell == 1) > 1:
        raise PreconditionViolated("at most one leg of length one")
    if t < 2 or s < 2 or k < 2:
        raise PreconditionViolated("need k, s, t >= 2")
    eta = 2 * k * s * t
    host = fam.host
    legs = _spider_leg_labels(tree)
    leaf_labels = [leg[-1] for leg in legs]
    internals = _internal_labels(tree)

    anchors = []
    for leg, ell, leaf in zip(legs, lengths, leaf_labels):
        if (k - ell) % 2 == 0:
            anchors.append(member[leaf - 1])
        else:
            anchors.append(member[tree.neighbor_of_leaf(leaf) - 1])
    if len(set(anchors)) != s:
        raise InternalInvariantBroken("branch anchors collide")

    used: set = set()
    copies = []
    for _copy in range(t):
        cur = member
        leg_paths = []
        local: set = set()
        for i, (leg, ell, leaf) in enumerate(zip(legs, lengths, leaf_labels)):
            diff = k - ell
            avoid = used | local | set(anchors)
            if diff == 0:
                leg_paths.append([anchors[i]])
                continue
            if diff % 2 == 0:
                cur, detour = robust_extend(fam, eta, cur, leaf, diff // 2, avoid)
            else:
                cur, detour = robust_extend(fam, eta, cur, leaf, (diff - 1) // 2,
                                            avoid, odd=True, anchor=anchors[i])
            local.update(detour)
            local.discard(anchors[i])
            leg_paths.append(detour)

        off_limits = used | local | set(anchors)
        final = None
        for m2 in fam.members_with_leaf_vector(fam.leaf_vector(cur)):
            if all(m2[v - 1] not in off_limits for v in internals):
                final = m2
                break
        if final is None:
            raise AssemblyFailed("no core member clear of the detours")

        center = final[0]
        full_legs = []
        for i, leg in enumerate(legs):
            # detour runs anchor .. y'_i; the member leg runs y'_i .. center
            tail = [final[x - 1] for x in reversed(leg)] + [center]
            full_legs.append(list(leg_paths[i]) + tail[1:])
        for seq in full_legs:
            _check_path(host, seq, k, (seq[0], center), used)
        copies.append((center, full_legs))
        for seq in full_legs:
            used.update(seq)
        used -= set(anchors)

    branches = tuple(anchors) + tuple(c for c, _ in copies)
    paths = []
    pair_index = []
    for ci, (center, full_legs) in enumerate(copies):
        for i, seq in enumerate(full_legs):
            paths.append(tuple(seq))
            pair_index.append((i, s + ci))
    w = Witness(branches, tuple(paths), tuple(pair_index))
    spec = PatternSpec("kst-subdivision", s=s, t=t, k=k, r=1)
    if not verify_witness(host, spec, w):
        raise AssemblyFailed("assembled spider system failed verification")
    return w


# ---------------------------------------------------------------------------
# Light 2-path machinery


def light_pair_graph(g: BipartiteGraph, h: int) -> tuple[Graph, dict]:
    """Auxiliary graph on M joining pairs that carry a light 2-path.

    A pair is joined iff 0 < |N(u) and N(v)| < h^4; the returned dict
    maps each edge to that common-neighbor count.
    """
    m_side = sorted(g.part_m)
    nbrs = {v: set(g.adj(v)) for v in m_side}
    bound = heavy_threshold(h, 2)
    edges = []
    mult = {}
    for i, u in enumerate(m_side):
        for v in m_side[i + 1:]:
            common = len(nbrs[u] & nbrs[v])
            if 0 < common < bound:
                edges.append((u, v))
                mult[(u, v)] = common
    return Graph.build(m_side, edges), mult


def light_path_collection(g: BipartiteGraph, k: int, h: int, gamma: float | None = None,
                          max_paths: int = 200_000) -> tuple[list[tuple[int, ...]], dict]:
    """k-paths starting at M whose M-starting 2-paths are all h-light.

    Builds the light-pair graph, peels it to half its average degree,
    enumerates floor(k/2)-paths there, lifts them through light-pair
    centers, discards walks with repeats, and extends by one edge when k
    is odd. Realized counts are reported next to the gamma-formula
    target (worst-case constants are far beyond desk scale).
    """
    if k < 2:
        raise PreconditionViolated("need k >= 2")
    aux, mult = light_pair_graph(g, h)
    report = {"m_size": g.m_size, "aux_edges": aux.e, "count": 0,
              "gamma_target": None, "truncated": False}
    if aux.e == 0:
        return [], report
    half_avg = math.ceil(aux.avg_degree() / 2)
    core = peel_to_min_degree(aux, half_avg)
    if core.e == 0:
        return [], report

    q = k // 2
    nbrs = {v: set(g.adj(v)) for v in g.part_m}
    paths: list[tuple[int, ...]] = []
    truncated = False

    def lift(mpath):
        nonlocal truncated
        options = []
        for a, b in zip(mpath, mpath[1:]):
            options.append(sorted(nbrs[a] & nbrs[b]))
        for centers in product(*options):
            if len(set(centers)) != len(centers):
                continue
            seq = [mpath[0]]
            for c, m_next in zip(centers, mpath[1:]):
                seq.extend([c, m_next])
            if k % 2 == 1:
                for w in g.adj(mpath[-1]):
                    if w not in centers:
                        paths.append(tuple(seq + [w]))
                        if len(paths) >= max_paths:
                            truncated = True
                            return
            else:
                paths.append(tuple(seq))
                if len(paths) >= max_paths:
                    truncated = True
                    return

    stack = [v for v in core.vertices]

    def grow(path, on_path):
        nonlocal truncated
        if truncated:
            return
        if len(path) == q + 1:
            lift(path)
            return
        for u in core.adj[path[-1]]:
            if u not in on_path:
                path.append(u)
                on_path.add(u)
                grow(path, on_path)
                path.pop()
                on_path.discard(u)

    for v in stack:
        if truncated:
            break
        grow([v], {v})

    bound = heavy_threshold(h, 2)
    for seq in paths:
        for i in range(0, len(seq) - 2, 2):
            common = len(nbrs[seq[i]] & nbrs[seq[i + 2]])
            if not 0 < common < bound:
                raise InternalInvariantBroken("emitted path holds a heavy 2-path")
        if len(set(seq)) != len(seq):
            raise InternalInvariantBroken("emitted walk repeats a vertex")

    report["count"] = len(paths)
    report["truncated"] = truncated
    if gamma is not None and g.m_size and g.n_size:
        d_m = min(g.degree(v) for v in g.part_m)
        d_n = min(g.degree(v) for v in g.part_n)
        report["gamma_target"] = gamma * g.m_size * d_m ** ((k + 1) // 2) * d_n ** (k // 2)
    return paths, report


def count_heavy_admissible(g: BipartiteGraph, j: int, eta: int,
                           guard: int = 10 ** 7) -> dict[tuple[str, str], int]:
    """Exact counts of eta-heavy eta-admissible j-path copies by endpoint
    side pattern, over the family of all copies in the host."""
    tree = LabeledTree.path(j)
    fam = enumerate_copies(g, tree, guard=guard)
    counts = {("M", "M"): 0, ("N", "N"): 0, ("M", "N"): 0, ("N", "M"): 0}
    for m in fam.members:
        if is_heavy(fam, m, eta) and is_admissible(fam, m, eta):
            counts[(g.side(m[0]), g.side(m[-1]))] += 1
    return counts
