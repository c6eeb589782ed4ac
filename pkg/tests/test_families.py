import random

import pytest

from turanreg.errors import MemberNotFound, TooLarge
from turanreg.families import (EmbeddingFamily, classify_heavy,
                               enumerate_copies, heavy_threshold,
                               is_admissible, is_heavy)
from turanreg.graphs import BipartiteGraph, Graph
from turanreg.trees import LabeledTree

from conftest import random_bipartite


class TestEnumerate:
    def test_k22_two_path_into_m(self):
        fam = enumerate_copies(BipartiteGraph.complete(2, 2),
                               LabeledTree.path(2), side_constraint=True)
        assert len(fam) == 4   # 2 ordered leaf pairs x 2 centers

    def test_edge_copies_count_both_orientations(self):
        g = Graph.build(range(4), [(0, 1), (1, 2), (2, 3)])
        fam = enumerate_copies(g, LabeledTree.path(1))
        assert len(fam) == 2 * g.e

    def test_k23_two_path(self):
        fam = enumerate_copies(BipartiteGraph.complete(2, 3),
                               LabeledTree.path(2), side_constraint=True)
        assert len(fam) == 6

    def test_guard(self):
        with pytest.raises(TooLarge):
            enumerate_copies(BipartiteGraph.complete(6, 6),
                             LabeledTree.path(4), guard=10)

    def test_vertex_limit(self):
        with pytest.raises(TooLarge):
            enumerate_copies(BipartiteGraph.complete(2, 2),
                             LabeledTree.path(12))

    def test_members_are_injective_edge_preserving(self):
        rng = random.Random(9)
        tree = LabeledTree.spider([1, 2])
        class_a, _ = tree.color_classes()
        for _ in range(10):
            g = random_bipartite(rng, 4, 5, 0.6)
            fam = enumerate_copies(g, tree, side_constraint=True)
            for m in fam.members:
                assert len(set(m)) == len(m)
                for u, v in tree.edges:
                    assert g.graph.has_edge(m[u - 1], m[v - 1])
                assert all(m[v - 1] in g.part_m for v in class_a)


class TestHeavyLight:
    def test_threshold_one_all_heavy(self):
        fam = enumerate_copies(BipartiteGraph.complete(2, 3),
                               LabeledTree.path(2), side_constraint=True)
        heavy, light = classify_heavy(fam, 1)
        assert len(heavy) == 6 and not light

    def test_three_below_sixteen_all_light(self):
        fam = enumerate_copies(BipartiteGraph.complete(2, 3),
                               LabeledTree.path(2), side_constraint=True)
        heavy, light = classify_heavy(fam, 2)
        assert not heavy and len(light) == 6

    def test_singleton_family_light(self):
        g = BipartiteGraph.complete(1, 2)
        tree = LabeledTree.path(2)
        fam = enumerate_copies(g, tree)
        sub = fam.subfamily(fam.members[:1])
        heavy, light = classify_heavy(sub, 2)
        assert not heavy and len(light) == 1

    def test_consistent_with_brute_recount(self):
        rng = random.Random(13)
        tree = LabeledTree.path(2)
        for _ in range(20):
            g = random_bipartite(rng, rng.randint(2, 5), rng.randint(2, 8), 0.7)
            fam = enumerate_copies(g, tree)
            h = rng.randint(1, 3)
            bound = heavy_threshold(h, 2)
            for m in fam.members:
                lv = fam.leaf_vector(m)
                brute = sum(1 for x in fam.members if fam.leaf_vector(x) == lv)
                assert is_heavy(fam, m, h) == (brute >= bound)


class TestAdmissible:
    def test_single_edge_always(self):
        g = Graph.build(range(3), [(0, 1), (1, 2)])
        fam = enumerate_copies(g, LabeledTree.path(1))
        assert is_admissible(fam, fam.members[0], 7)

    def test_small_shared_family(self):
        # 2-paths sharing leaf vectors, size < h^4: split edges light
        fam = enumerate_copies(BipartiteGraph.complete(2, 3),
                               LabeledTree.path(2), side_constraint=True)
        assert all(is_admissible(fam, m, 2) for m in fam.members)

    def test_engineered_heavy_split_piece(self):
        # a single-edge piece has one distinct projection per leaf vector,
        # so it can never be heavy; the smallest heavy split piece is a
        # 2-path with many distinct centers between fixed endpoints
        h = 2
        # host: a - b, then b - c_i - d for h^4 distinct centers c_i
        centers = list(range(3, 3 + h ** 4))
        edges = [(0, 1)] + [(1, c) for c in centers] + [(c, 2) for c in centers]
        g = Graph.build(range(3 + h ** 4), edges)
        tree = LabeledTree.path(3)
        members = tuple((0, 1, c, 2) for c in centers)
        fam = EmbeddingFamily(tree, g, members)
        counts = fam.distinct_projection_counts(frozenset({2, 3, 4}))
        assert counts[(1, 2)] == h ** 4
        assert not is_admissible(fam, fam.members[0], h)
        # with one center removed the piece drops below the threshold
        smaller = fam.subfamily(members[:-1])
        assert is_admissible(smaller, smaller.members[0], h)

    def test_member_not_found(self):
        fam = enumerate_copies(BipartiteGraph.complete(2, 2),
                               LabeledTree.path(2), side_constraint=True)
        with pytest.raises(MemberNotFound):
            is_admissible(fam, (9, 9, 9), 2)


class TestSplitStructure:
    def test_split_subtrees_partition_edges(self):
        for tree in [LabeledTree.path(4), LabeledTree.spider([2, 3]),
                     LabeledTree.spider([1, 2, 2]),
                     LabeledTree.general(6, [(1, 2), (2, 3), (2, 4),
                                             (4, 5), (4, 6)])]:
            for v in tree.nonleaves:
                pieces = tree.split_subtrees(v)
                edge_sets = []
                for piece in pieces:
                    sub = {e for e in tree.edges
                           if e[0] in piece and e[1] in piece}
                    edge_sets.append(sub)
                union = set().union(*edge_sets)
                assert union == set(tree.edges)
                assert sum(len(s) for s in edge_sets) == tree.num_edges


class TestSerialization:
    def test_lines_roundtrip(self):
        fam = enumerate_copies(BipartiteGraph.complete(2, 3),
                               LabeledTree.path(2), side_constraint=True)
        text = fam.to_lines()
        body = [ln for ln in text.splitlines() if not ln.startswith("#")]
        back = tuple(EmbeddingFamily.member_from_line(ln, 3) for ln in body)
        assert back == fam.members
