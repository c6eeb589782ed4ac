"""Vertex-labeled trees: paths, spiders, and general trees.

Labels run 1..v(T). Copies of a tree in a host are label-ordered, so a
path and its reversal are distinct copies; the leaf vector lists leaf
labels in increasing label order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, PreconditionViolated


@dataclass(frozen=True)
class LabeledTree:
    num_vertices: int
    edges: frozenset[tuple[int, int]]
    kind: str = "general"                      # "path" | "spider" | "general"
    length_vector: tuple[int, ...] | None = None  # spider leg lengths
    _adj: dict = field(default=None, repr=False, compare=False)

    @staticmethod
    def path(length: int) -> "LabeledTree":
        """Path of the given edge count, labels consecutive along it."""
        if length < 1:
            raise PreconditionViolated("path length must be >= 1")
        edges = frozenset((i, i + 1) for i in range(1, length + 1))
        return LabeledTree(length + 1, edges, "path")

    @staticmethod
    def spider(lengths) -> "LabeledTree":
        """Spider with center label 1 and legs labeled consecutively outward."""
        lengths = tuple(int(x) for x in lengths)
        if len(lengths) < 2 or any(x < 1 for x in lengths):
            raise PreconditionViolated("a spider needs >= 2 legs of length >= 1")
        edges = set()
        nxt = 2
        for leg in lengths:
            prev = 1
            for _ in range(leg):
                edges.add((min(prev, nxt), max(prev, nxt)))
                prev = nxt
                nxt += 1
        return LabeledTree(nxt - 1, frozenset(edges), "spider", lengths)

    @staticmethod
    def general(num_vertices: int, edges) -> "LabeledTree":
        tree = LabeledTree(num_vertices, frozenset(
            (min(u, v), max(u, v)) for u, v in edges))
        tree._validate()
        return tree

    def _validate(self):
        if len(self.edges) != self.num_vertices - 1:
            raise ParseError("a tree on v vertices has v-1 edges")
        seen = {1}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != self.num_vertices:
            raise ParseError("tree is not connected")

    @property
    def adj(self) -> dict[int, tuple[int, ...]]:
        if self._adj is None:
            a = {v: [] for v in range(1, self.num_vertices + 1)}
            for u, v in self.edges:
                if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                    raise ParseError(f"label {u, v} out of range")
                a[u].append(v)
                a[v].append(u)
            object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in a.items()})
        return self._adj

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> range:
        return range(1, self.num_vertices + 1)

    @property
    def leaves(self) -> tuple[int, ...]:
        if self.num_vertices == 1:
            return (1,)
        return tuple(v for v in self.labels if len(self.adj[v]) == 1)

    @property
    def nonleaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.labels if len(self.adj[v]) > 1)

    def neighbor_of_leaf(self, leaf: int) -> int:
        if len(self.adj[leaf]) != 1:
            raise PreconditionViolated(f"label {leaf} is not a leaf")
        return self.adj[leaf][0]

    def color_classes(self) -> tuple[frozenset[int], frozenset[int]]:
        """Proper 2-coloring by parity of distance from label 1 (class of 1 first)."""
        color = {1: 0}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for u in self.adj[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    frontier.append(u)
        return (frozenset(v for v, c in color.items() if c == 0),
                frozenset(v for v, c in color.items() if c == 1))

    def embed_order(self) -> list[tuple[int, int | None]]:
        """BFS (label, parent) order starting from label 1."""
        order = [(1, None)]
        seen = {1}
        i = 0
        while i < len(order):
            v = order[i][0]
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    order.append((u, v))
            i += 1
        return order

    def split_subtrees(self, v: int) -> list[frozenset[int]]:
        """Vertex sets of the edge-disjoint subtrees split off at nonleaf v.

        Each returned set contains v; together they partition E(T).
        """
        if len(self.adj[v]) < 2:
            raise PreconditionViolated(f"label {v} is not a nonleaf")
        pieces = []
        for start in self.adj[v]:
            comp = {v, start}
            frontier = [start]
            while frontier:
                w = frontier.pop()
                for u in self.adj[w]:
                    if u != v and u not in comp:
                        comp.add(u)
                        frontier.append(u)
            pieces.append(frozenset(comp))
        return pieces

    def subtrees(self) -> list[frozenset[int]]:
        """All connected label subsets, smallest first (then lexicographic)."""
        found = {frozenset([v]) for v in self.labels}
        frontier = list(found)
        while frontier:
            s = frontier.pop()
            for v in s:
                for u in self.adj[v]:
                    if u not in s:
                        bigger = s | {u}
                        if bigger not in found:
                            found.add(bigger)
                            frontier.append(bigger)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def extension_pairs(self) -> list[tuple[frozenset[int], int]]:
        """All (subtree, new label) pairs with the label adjacent to the subtree.

        These are the one-vertex tree extensions the robustness condition
        quantifies over (the extended subtree may be all of T).
        """
        pairs = []
        for s in self.subtrees():
            if len(s) == self.num_vertices:
                continue
            fresh = sorted({u for v in s for u in self.adj[v]} - s)
            pairs.extend((s, w) for w in fresh)
        return pairs

    def induced_leaves(self, subset: frozenset[int]) -> tuple[int, ...]:
        """Leaves of the subtree induced on `subset`, in label order."""
        if len(subset) == 1:
            return tuple(subset)
        return tuple(v for v in sorted(subset)
                     if sum(1 for u in self.adj[v] if u in subset) == 1)

    def sub_tree(self, subset: frozenset[int]) -> tuple["LabeledTree", dict[int, int]]:
        """Subtree on `subset` relabeled 1..|subset|, plus old-to-new label map.

        The relabeling is monotone, so leaf order is preserved.
        """
        ordered = sorted(subset)
        relabel = {old: i + 1 for i, old in enumerate(ordered)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges
                 if u in subset and v in subset]
        if len(edges) != len(subset) - 1:
            raise PreconditionViolated("subset does not induce a subtree")
        return LabeledTree.general(len(subset), edges), relabel
