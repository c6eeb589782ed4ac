import random

import pytest

from turanreg.errors import NotHeavy, PreconditionViolated
from turanreg.families import EmbeddingFamily, enumerate_copies
from turanreg.finders import PatternSpec, verify_witness
from turanreg.graphs import BipartiteGraph, Graph
from turanreg.machinery import (ProductEmbeddingFamily, Refusal,
                                certify_linked, count_heavy_admissible,
                                count_paths_between, disjoint_members,
                                extract_robust, find_admissible_subpath,
                                find_admissible_subspider,
                                light_collection_gamma, light_path_collection,
                                light_pair_graph, path_linkage, robust_extend,
                                spider_linkage, verify_robust)
from turanreg.trees import LabeledTree



def robust_2path_family(m=10, n=12):
    host = BipartiteGraph.complete(m, n)
    return enumerate_copies(host, LabeledTree.path(2), side_constraint=True)


class TestAdmissibleSubpath:
    def test_minimal_is_itself(self):
        host = BipartiteGraph.complete(6, 40)
        tree = LabeledTree.path(2)
        member = (0, 6, 1)
        labels, imgs = find_admissible_subpath(host, tree, member, 2)
        assert labels == (1, 2, 3) and imgs == member

    def test_light_copy_rejected(self):
        host = BipartiteGraph.complete(2, 3)
        with pytest.raises(NotHeavy):
            find_admissible_subpath(host, LabeledTree.path(2), (0, 2, 1), 3)

    def test_heavy_middle_window(self):
        # w - A(8) - X(1024) - B(8) - z: the only heavy 2-path window of
        # the 4-path (w, a, x, b, z) is the middle one
        a_set = list(range(2, 10))
        x_set = list(range(10, 1034))
        b_set = list(range(1034, 1042))
        w, z = 0, 1
        edges = [(w, a) for a in a_set] + [(b, z) for b in b_set]
        edges += [(a, x) for a in a_set for x in x_set]
        edges += [(x, b) for x in x_set for b in b_set]
        g = Graph.build(range(1042), edges)
        eta = 2
        assert count_paths_between(g, w, z, 4) == 8 * 1024 * 8
        member = (w, a_set[0], x_set[0], b_set[0], z)
        labels, imgs = find_admissible_subpath(g, LabeledTree.path(4), member, eta)
        assert labels == (2, 3, 4)
        assert imgs == (a_set[0], x_set[0], b_set[0])


def engineered_spider_family(m2_shared=False):
    """Spider(2,2) family on an engineered host.

    292 centers; one shared pool of 15 first-leg mids adjacent to every
    center; per-center private pools of 15 second-leg mids. Leaf images
    are fixed, every member-internal distance-2 pair stays light, and
    the full tree is heavy (65700 >= 2^16 members on one leaf vector).
    """
    n_centers, pool = 292, 15
    y1, y2 = 0, 1
    centers = list(range(2, 2 + n_centers))
    base = 2 + n_centers
    m1_pool = list(range(base, base + pool))
    base += pool
    m2_pools = {}
    for c in centers:
        m2_pools[c] = list(range(base, base + pool))
        base += pool
    edges = [(y1, m) for m in m1_pool]
    members = []
    for c in centers:
        edges += [(c, m) for m in m1_pool]
        edges += [(c, m) for m in m2_pools[c]]
        edges += [(m, y2) for m in m2_pools[c]]
        for m1 in m1_pool:
            for m2 in m2_pools[c]:
                members.append((c, m1, y1, m2, y2))
    part_m = [y1, y2] + centers
    part_n = m1_pool + [m for c in centers for m in m2_pools[c]]
    host = BipartiteGraph.build(part_m, part_n, edges)
    tree = LabeledTree.spider([2, 2])
    return EmbeddingFamily(tree, host, tuple(members), True)


class TestAdmissibleSubspider:
    def test_proper_subspider_selected(self):
        fam = engineered_spider_family()
        member = fam.members[0]
        labels, proj, vec = find_admissible_subspider(fam, member, 2)
        # the shared first-leg pool makes the (1,2)-shortening heavy
        assert vec == (1, 2)
        assert labels == frozenset({1, 2, 4, 5})
        assert vec[0] + vec[1] > 2

    def test_light_member_rejected(self):
        host = BipartiteGraph.complete(3, 4)
        fam = enumerate_copies(host, LabeledTree.spider([2, 2]),
                               side_constraint=True)
        with pytest.raises(NotHeavy):
            find_admissible_subspider(fam, fam.members[0], 2)


class TestCertifyLinked:
    def test_k2h_host(self):
        h = 4
        host = BipartiteGraph.complete(2, h)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        got = certify_linked(fam, (0, 1), h)
        assert isinstance(got, tuple) and len(got) == h
        centers = [m[1] for m in got]
        assert len(set(centers)) == h

    def test_below_threshold_refused(self):
        host = BipartiteGraph.complete(2, 3)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        got = certify_linked(fam, (0, 1), 4)   # 3 < 4^4 / 2 and 3 < 4
        assert isinstance(got, Refusal)
        assert got.family_size == 3

    def test_large_engineered_host(self):
        h = 3
        q = h ** 4   # 81 >= h^4/2 and >= h
        host = BipartiteGraph.complete(2, q)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        got = certify_linked(fam, (0, 1), h)
        assert isinstance(got, tuple) and len(got) == h


class TestExtractRobust:
    def test_low_multiplicity_emptied(self):
        host = BipartiteGraph.complete(2, 3)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        sub, report = extract_robust(fam, 2)
        assert len(sub) == 0

    def test_narrow_side_emptied_by_extension_pairs(self):
        # 8 centers pass the multiplicity gate, but a 2-vertex far side
        # cannot offer 2 distinct re-embeddings of a leaf
        host = BipartiteGraph.complete(2, 8)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        sub, report = extract_robust(fam, 2)
        assert len(sub) == 0
        assert report.type_one_removed > 0

    def test_rich_host_survives_and_verifies(self):
        host = BipartiteGraph.complete(5, 10)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        sub, report = extract_robust(fam, 2)
        assert len(sub) == len(fam)
        ok, why = verify_robust(sub, 2)
        assert ok, why

    def test_single_member_emptied(self):
        host = BipartiteGraph.complete(2, 2)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        sub, _ = extract_robust(fam.subfamily(fam.members[:1]), 2)
        assert len(sub) == 0

    def test_bound_report(self):
        host = BipartiteGraph.complete(5, 10)
        fam = enumerate_copies(host, LabeledTree.path(2), side_constraint=True)
        _, report = extract_robust(fam, 2, bound_check=(0.5, host.e, 5, 10, 2, 1))
        assert report.statement_bound == 0.5 * host.e * 10
        assert report.fraction_bound == 0.5 * len(fam)
        assert report.statement_ok and report.fraction_ok


class TestRobustExtend:
    def test_t_zero_identity(self):
        fam = robust_2path_family()
        m = fam.members[0]
        cur, path = robust_extend(fam, 8, m, 3, 0, avoid=set())
        assert cur == m and path == [m[2]]

    def test_t_one_detour(self):
        fam = robust_2path_family()
        m = fam.members[0]
        avoid = {5, 17}
        cur, path = robust_extend(fam, 8, m, 3, 1, avoid=avoid)
        assert len(path) == 3 and path[0] == m[2]
        assert not (set(path) & avoid)
        assert fam.leaf_vector(cur)[0] == m[0]
        assert fam.leaf_vector(cur)[1] == path[-1]

    def test_budget_violation(self):
        fam = robust_2path_family()
        with pytest.raises(PreconditionViolated):
            robust_extend(fam, 8, fam.members[0], 3, 1, avoid=set(range(5, 12)))

    def test_odd_variant_path_parity(self):
        fam = robust_2path_family(14, 15)
        m = fam.members[0]
        cur, path = robust_extend(fam, 12, m, 3, 1, avoid=set(), odd=True)
        assert len(path) == 4           # length 3 = 2t+1
        assert path[0] == m[1]          # starts at the neighbor image


class TestPathLinkage:
    def test_equal_length_produce(self):
        fam = robust_2path_family()
        link = path_linkage(fam, fam.members[0], 2, 2)
        path = link.produce(set())
        assert len(path) == 3
        assert (path[0], path[-1]) == link.endpoints

    def test_parity_flip(self):
        fam = robust_2path_family(14, 15)
        link = path_linkage(fam, fam.members[0], 3, 2)
        path = link.produce({4, 5})
        assert len(path) == 4
        assert (path[0], path[-1]) == link.endpoints

    def test_budget_rejected(self):
        fam = robust_2path_family()
        link = path_linkage(fam, fam.members[0], 2, 2)
        with pytest.raises(PreconditionViolated):
            link.produce(set(range(3, 10)))   # |W| = 7 > kh = 4

    def test_random_avoid_sets(self):
        rng = random.Random(77)
        fam = robust_2path_family(14, 15)
        link = path_linkage(fam, fam.members[0], 4, 2)
        pool = [v for v in range(29) if v not in link.endpoints]
        for _ in range(50):
            banned = set(rng.sample(pool, rng.randint(0, 8)))
            path = link.produce(banned)
            assert len(path) == 5
            assert not (set(path[1:-1]) & banned)
            assert len(set(path)) == 5


class TestSpiderLinkage:
    def test_three_parameter_combos(self):
        for s, k, t, legs, pool in [(2, 2, 2, [1, 2], 16),
                                    (2, 3, 2, [1, 2], 24),
                                    (3, 2, 2, [1, 2, 2], 24)]:
            fam = ProductEmbeddingFamily.build(LabeledTree.spider(legs), pool)
            w = spider_linkage(fam, fam.canonical_member(), k, t)
            spec = PatternSpec("kst-subdivision", s=s, t=t, k=k, r=1)
            assert verify_witness(fam.host, spec, w)

    def test_two_unit_legs_rejected(self):
        fam = ProductEmbeddingFamily.build(LabeledTree.spider([1, 1, 2]), 24)
        with pytest.raises(PreconditionViolated):
            spider_linkage(fam, fam.canonical_member(), 2, 2)

    def test_long_leg_rejected(self):
        fam = ProductEmbeddingFamily.build(LabeledTree.spider([3, 3]), 24)
        with pytest.raises(PreconditionViolated):
            spider_linkage(fam, fam.canonical_member(), 2, 2)


class TestLightPairGraph:
    def test_k23_single_light_pair(self):
        aux, mult = light_pair_graph(BipartiteGraph.complete(2, 3), 2)
        assert aux.edges == frozenset({(0, 1)})
        assert mult[(0, 1)] == 3

    def test_heavy_pair_excluded(self):
        aux, _ = light_pair_graph(BipartiteGraph.complete(2, 16), 2)
        assert aux.e == 0

    def test_matching_has_no_two_paths(self):
        g = BipartiteGraph.build([0, 1], [2, 3], [(0, 2), (1, 3)])
        aux, _ = light_pair_graph(g, 5)
        assert aux.e == 0


class TestLightPathCollection:
    def test_k44_all_two_paths(self):
        paths, report = light_path_collection(BipartiteGraph.complete(4, 4), 2, 5)
        assert report["count"] == 4 * 3 * 4

    def test_heavy_host_empty(self):
        paths, report = light_path_collection(BipartiteGraph.complete(2, 16), 2, 2)
        assert paths == [] and report["count"] == 0

    def test_k_one_rejected(self):
        with pytest.raises(PreconditionViolated):
            light_path_collection(BipartiteGraph.complete(4, 4), 1, 5)

    def test_odd_k_lengths(self):
        paths, report = light_path_collection(BipartiteGraph.complete(8, 8),
                                              3, 100)
        assert paths and all(len(p) == 4 for p in paths)

    def test_gamma_reported(self):
        gamma = light_collection_gamma(2, 1.0, 2, 1)
        _, report = light_path_collection(BipartiteGraph.complete(8, 8), 2,
                                          64, gamma=gamma)
        assert report["gamma_target"] == gamma * 8 * 8 * 8


class TestCountHeavyAdmissible:
    def test_no_heavy(self):
        counts = count_heavy_admissible(BipartiteGraph.complete(2, 3), 2, 2)
        assert all(v == 0 for v in counts.values())

    def test_k2_20_hand_count(self):
        counts = count_heavy_admissible(BipartiteGraph.complete(2, 20), 2, 2)
        assert counts[("M", "M")] == 40
        assert counts[("N", "N")] == 0

    def test_diameter_exceeded(self):
        g = BipartiteGraph.build([0], [1], [(0, 1)])
        counts = count_heavy_admissible(g, 2, 2)
        assert all(v == 0 for v in counts.values())
