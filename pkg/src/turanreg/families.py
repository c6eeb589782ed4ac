"""Families of tree copies in a host graph: enumeration, projections,
and the heavy/light/admissible classification.

An embedding is stored as a tuple `img` with img[i] = host vertex of
label i+1. A family's "projection" onto a subtree is the set of
distinct image tuples of that subtree's labels; multiplicities below
are always counted over distinct projections grouped by their leaf
vector, which is the reading the split-subtree counting uses.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MemberNotFound, PreconditionViolated, TooLarge
from .graphs import BipartiteGraph, Graph
from .trees import LabeledTree

Member = tuple[int, ...]


def _host_parts(host):
    if isinstance(host, BipartiteGraph):
        return host.graph, host.part_m, host.part_n
    return host, None, None


@dataclass
class EmbeddingFamily:
    """Concrete, materialized family of copies of one labeled tree."""

    tree: LabeledTree
    host: Graph | BipartiteGraph
    members: tuple[Member, ...]
    side_constraint: bool = False      # class A embedded into part M
    _lv_index: dict = field(default=None, repr=False)
    _ext_cache: dict = field(default_factory=dict, repr=False)
    _proj_cache: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def leaf_labels(self) -> tuple[int, ...]:
        return self.tree.leaves

    def leaf_vector(self, member: Member) -> tuple[int, ...]:
        return tuple(member[v - 1] for v in self.leaf_labels)

    def project(self, labels: frozenset[int], member: Member) -> tuple[int, ...]:
        return tuple(member[v - 1] for v in sorted(labels))

    @property
    def lv_index(self) -> dict[tuple[int, ...], list[int]]:
        if self._lv_index is None:
            idx: dict[tuple[int, ...], list[int]] = {}
            for i, m in enumerate(self.members):
                idx.setdefault(self.leaf_vector(m), []).append(i)
            self._lv_index = idx
        return self._lv_index

    def leaf_vectors(self):
        return self.lv_index.keys()

    def members_with_leaf_vector(self, lv: tuple[int, ...]):
        return [self.members[i] for i in self.lv_index.get(lv, ())]

    def leaf_vector_multiplicity(self, lv: tuple[int, ...]) -> int:
        return len(self.lv_index.get(lv, ()))

    def extension_images(self, t1_labels: frozenset[int], proj: Member,
                         new_label: int) -> tuple[int, ...]:
        """Distinct images of `new_label` over members agreeing with `proj`
        on the subtree `t1_labels`."""
        key = (t1_labels, new_label)
        table = self._ext_cache.get(key)
        if table is None:
            order = sorted(t1_labels)
            table = {}
            for m in self.members:
                p = tuple(m[v - 1] for v in order)
                table.setdefault(p, set()).add(m[new_label - 1])
            table = {p: tuple(sorted(s)) for p, s in table.items()}
            self._ext_cache[key] = table
        return table.get(proj, ())

    def distinct_projection_counts(self, labels: frozenset[int]
                                   ) -> dict[tuple[int, ...], int]:
        """Leaf vector of the projected subtree -> number of distinct projections."""
        cached = self._proj_cache.get(labels)
        if cached is not None:
            return cached
        order = sorted(labels)
        leaf_pos = [order.index(v) for v in self.tree.induced_leaves(labels)]
        distinct = {tuple(m[v - 1] for v in order) for m in self.members}
        counts: dict[tuple[int, ...], int] = {}
        for p in distinct:
            lv = tuple(p[i] for i in leaf_pos)
            counts[lv] = counts.get(lv, 0) + 1
        self._proj_cache[labels] = counts
        return counts

    def subfamily(self, members) -> "EmbeddingFamily":
        return EmbeddingFamily(self.tree, self.host, tuple(members),
                               self.side_constraint)

    # --- line-oriented serialization (one embedding per line) ---

    def to_lines(self) -> str:
        head = [
            f"# tree {self.tree.num_vertices} "
            + " ".join(f"{u}-{v}" for u, v in sorted(self.tree.edges)),
            f"# side-constraint {int(self.side_constraint)}",
        ]
        body = [" ".join(f"{i + 1}:{x}" for i, x in enumerate(m)) for m in self.members]
        return "\n".join(head + body) + "\n"

    @staticmethod
    def member_from_line(line: str, num_vertices: int) -> Member:
        img = [None] * num_vertices
        for token in line.split():
            lab, _, vert = token.partition(":")
            img[int(lab) - 1] = int(vert)
        if any(x is None for x in img):
            raise PreconditionViolated("incomplete embedding line")
        return tuple(img)

    @staticmethod
    def from_lines(text: str, host) -> "EmbeddingFamily":
        tree = None
        constrained = False
        members = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("# tree "):
                parts = line.split()
                n = int(parts[2])
                edges = [tuple(int(x) for x in tok.split("-")) for tok in parts[3:]]
                tree = LabeledTree.general(n, edges)
            elif line.startswith("# side-constraint"):
                constrained = bool(int(line.split()[-1]))
            elif not line.startswith("#"):
                if tree is None:
                    raise PreconditionViolated("family text lacks a tree header")
                members.append(EmbeddingFamily.member_from_line(
                    line, tree.num_vertices))
        if tree is None:
            raise PreconditionViolated("family text lacks a tree header")
        return EmbeddingFamily(tree, host, tuple(members), constrained)


def enumerate_copies(host, tree: LabeledTree, side_constraint: bool = False,
                     guard: int = 10 ** 7) -> EmbeddingFamily:
    """All injective label-preserving embeddings of `tree` into `host`.

    With `side_constraint`, the color class of label 1 goes into part M
    and the other class into part N. Backtracking follows label BFS
    order; the node budget `guard` caps the search (TooLarge).
    """
    if tree.num_vertices > 12:
        raise TooLarge("copy enumeration limited to v(T) <= 12")
    base, part_m, part_n = _host_parts(host)
    if side_constraint and part_m is None:
        raise PreconditionViolated("side constraint needs a bipartite host")
    class_a, class_b = tree.color_classes()

    def allowed(label: int, vertex: int) -> bool:
        if not side_constraint:
            return True
        return vertex in (part_m if label in class_a else part_n)

    order = tree.embed_order()
    img = [0] * tree.num_vertices
    used = set()
    out: list[Member] = []
    nodes = 0

    def backtrack(pos: int):
        nonlocal nodes
        if pos == len(order):
            out.append(tuple(img))
            return
        label, parent = order[pos]
        candidates = base.vertices if parent is None else base.adj[img[parent - 1]]
        for v in candidates:
            nodes += 1
            if nodes > guard:
                raise TooLarge(f"copy enumeration exceeded {guard} nodes")
            if v in used or not allowed(label, v):
                continue
            img[label - 1] = v
            used.add(v)
            backtrack(pos + 1)
            used.discard(v)

    backtrack(0)
    out.sort()
    return EmbeddingFamily(tree, host, tuple(out), side_constraint)


def heavy_threshold(h: int, tree_edges: int) -> int:
    return h ** (tree_edges ** 2)


def classify_heavy(fam: EmbeddingFamily, h: int) -> tuple[list[Member], list[Member]]:
    """Split members into (heavy, light) by leaf-vector multiplicity."""
    if h < 1:
        raise PreconditionViolated("need h >= 1")
    bound = heavy_threshold(h, fam.tree.num_edges)
    heavy, light = [], []
    for m in fam.members:
        if fam.leaf_vector_multiplicity(fam.leaf_vector(m)) >= bound:
            heavy.append(m)
        else:
            light.append(m)
    return heavy, light


def is_heavy(fam: EmbeddingFamily, member: Member, h: int) -> bool:
    bound = heavy_threshold(h, fam.tree.num_edges)
    return fam.leaf_vector_multiplicity(fam.leaf_vector(member)) >= bound


def is_admissible(fam: EmbeddingFamily, member: Member, h: int) -> bool:
    """True iff the tree is a single edge, or every subtree split off at
    every nonleaf projects to an h-light copy."""
    if member not in set(fam.members):
        raise MemberNotFound("embedding is not a member of the family")
    tree = fam.tree
    if tree.num_edges == 1:
        return True
    for v in tree.nonleaves:
        for piece in tree.split_subtrees(v):
            counts = fam.distinct_projection_counts(piece)
            leaf_labels = tree.induced_leaves(piece)
            lv = tuple(member[x - 1] for x in leaf_labels)
            if counts.get(lv, 0) >= heavy_threshold(h, len(piece) - 1):
                return False
    return True
