"""Acceptance battery: one test per criterion, each printing a PASS line
with its realized statistics (run with -s to watch them)."""
import itertools
import json
import math
import random
import time
from fractions import Fraction

import pytest

from turanreg.biregularize import (biregularize, biregularize_with_floor,
                                   min_roof, roof_bottleneck_oracle)
from turanreg.construct import (ConstructionSpec, OrientedTree,
                                balanced_interval_verified,
                                check_alpha_balanced, count_rooted_copies,
                                maximal_interval, preset_family,
                                prune_bad_roots, sample_construction)
from turanreg.errors import VerificationFailed
from turanreg.families import enumerate_copies
from turanreg.finders import PatternSpec, find_pattern, verify_witness
from turanreg.graphs import BipartiteGraph, Graph, format_edge_list
from turanreg.machinery import (ProductEmbeddingFamily, certify_linked,
                                extract_robust, light_path_collection,
                                path_linkage, spider_linkage, verify_robust)
from turanreg.regularize import enhanced_regularize, pyber_matching
from turanreg.trees import LabeledTree

from conftest import random_bipartite, random_graph, random_half_regular


def report(num, name, detail=""):
    print(f"ACCEPTANCE {num:02d} {name}: PASS {detail}")


# criterion 1 -----------------------------------------------------------


def test_01_enhanced_regularization_contract():
    rng = random.Random(101)
    sizes = [32, 45, 64, 91, 128, 181, 256, 362, 512]
    weights = [6, 6, 5, 5, 4, 3, 2, 1, 1]
    factors = itertools.cycle([1.0, 1.25, 1.6, 2.2])
    started = time.monotonic()
    ran = 0
    for c, eps in itertools.product((0.5, 1.0), (0.2, 0.5, 0.8)):
        combo_done = 0
        size_cycle = itertools.cycle(
            [n for n, w in zip(sizes, weights) for _ in range(w)])
        while combo_done < 34:
            n = next(size_cycle)
            cap = n * (n - 1) // 2
            need = math.ceil(c * n ** (1 + eps))
            e = min(cap, math.ceil(need * next(factors)))
            if e < need:       # density infeasible at this size
                continue
            g = random_graph(rng, n, e)
            h, cert = enhanced_regularize(g, c, eps)
            assert cert.all_ok, (n, c, eps, cert.to_dict())
            assert h.is_subgraph_of(g)
            ran += 1
            combo_done += 1
    elapsed = time.monotonic() - started
    assert ran >= 200, f"only {ran} instances were feasible"
    assert elapsed < 60, f"took {elapsed:.1f}s"
    report(1, "enhanced regularization contract",
           f"({ran} graphs, {elapsed:.1f}s)")


# criterion 2 -----------------------------------------------------------


def _is_minimal_tight(g, a1):
    nbr = {a: set(g.adj(a)) for a in a1}
    members = sorted(a1)
    for mask in range(1, 1 << len(members)):
        subset = [members[i] for i in range(len(members)) if mask >> i & 1]
        if len(subset) == len(members):
            continue
        seen = set()
        for a in subset:
            seen |= nbr[a]
        if len(seen) <= len(subset):
            return False
    return True


def test_02_pyber_matching():
    rng = random.Random(202)
    checked_minimality = 0
    for trial in range(500):
        a = rng.randint(1, 64)
        b = rng.randint(1, a)
        d = rng.randint(1, b)
        g = random_half_regular(rng, a, b, d)
        res = pyber_matching(g, d)
        assert len(res.a1) == len(res.b1) == len(res.matching) >= 1
        for x in res.a1:
            assert set(g.adj(x)) <= res.b1
        matched_a = {min(e) for e in res.matching}
        matched_b = {max(e) for e in res.matching}
        assert matched_a == res.a1 and matched_b == res.b1
        assert all(e in g.graph.edges for e in res.matching)
        if len(res.a1) <= 12:
            assert _is_minimal_tight(g, res.a1), (trial, sorted(res.a1))
            checked_minimality += 1
    report(2, "Pyber matching structure + minimality",
           f"(500 instances, {checked_minimality} brute-checked)")


# criterion 3 -----------------------------------------------------------


def test_03_roof_min_max():
    rng = random.Random(303)
    done = 0
    while done < 1000:
        m = rng.randint(1, 8)
        n = rng.randint(1, 15)
        g = random_bipartite(rng, m, n, rng.uniform(0.15, 0.95))
        if not g.part_n or any(g.degree(v) == 0 for v in g.part_n):
            continue
        assert min_roof(g).delta == roof_bottleneck_oracle(g)
        done += 1
    report(3, "roof min-max equals subset oracle", "(1000 instances)")


# criterion 4 -----------------------------------------------------------


def test_04_biregularization_contract():
    rng = random.Random(404)
    done = 0
    while done < 100:
        m = rng.randint(8, 28)
        n = rng.randint(m, 3 * m)
        g = random_bipartite(rng, m, n, rng.uniform(0.55, 1.0))
        alpha = rng.choice([0.55, 0.6, 0.7, 0.8])
        beta = rng.choice([0.55, 0.6, 0.7])
        c = 0.25
        if g.e == 0 or g.avg_degree() < 8:
            continue
        if g.e < c * m ** alpha * n ** beta:
            continue
        if done % 2 == 0:
            out, cert = biregularize(g, c, alpha, beta)
        else:
            if g.e < c * (m ** alpha * n ** beta + n * math.log2(m)):
                continue
            out, cert = biregularize_with_floor(g, c, alpha, beta)
        assert cert.all_ok, cert.to_dict()
        assert out.part_m <= g.part_m and out.part_n <= g.part_n
        done += 1
    report(4, "biregularization certificates", "(100 dense instances)")


# criterion 5 -----------------------------------------------------------


def test_05_robustness_recheck():
    rng = random.Random(505)
    p2 = LabeledTree.path(2)
    nonempty = 0
    for i in range(50):
        q = rng.randint(2, 64)
        fam = enumerate_copies(BipartiteGraph.complete(2, q), p2,
                               side_constraint=True)
        sub, _ = extract_robust(fam, 2)
        ok, why = verify_robust(sub, 2)
        assert ok, why
        for lv in sub.leaf_vectors():
            assert isinstance(certify_linked(sub, lv, 2), tuple)
    for i in range(50):
        m = rng.randint(4, 9)
        n = rng.randint(6, 16)
        g = random_bipartite(rng, m, n, rng.uniform(0.5, 1.0))
        eta = rng.choice([2, 3])
        fam = enumerate_copies(g, p2, side_constraint=True)
        sub, _ = extract_robust(fam, eta)
        ok, why = verify_robust(sub, eta)
        assert ok, why
        if len(sub):
            nonempty += 1
        for lv in sub.leaf_vectors():
            assert isinstance(certify_linked(sub, lv, eta), tuple)
    assert nonempty >= 10
    report(5, "robust subfamily recheck",
           f"(100 hosts, {nonempty} nonempty outputs)")


# criterion 6 -----------------------------------------------------------


def test_06_linkage_producers():
    rng = random.Random(606)
    p2 = LabeledTree.path(2)
    setups = []
    for host, k in [(BipartiteGraph.complete(10, 12), 2),
                    (BipartiteGraph.complete(14, 15), 3),
                    (BipartiteGraph.complete(18, 18), 4)]:
        fam = enumerate_copies(host, p2, side_constraint=True)
        ok, why = verify_robust(fam, 4 * k)
        assert ok, why
        setups.append((fam, host, k))
    for k in (3, 4, 5):
        fam = ProductEmbeddingFamily.build(p2, 4 * k + 2)
        setups.append((fam, fam.host, k))

    trials = 0
    per = -(-1000 // len(setups))
    for fam, host, k in setups:
        member = fam.members[0] if hasattr(fam, "members") \
            else fam.canonical_member()
        link = path_linkage(fam, member, k, 2)
        verts = [v for v in host.graph.vertices if v not in link.endpoints]
        for _ in range(per):
            banned = set(rng.sample(verts, rng.randint(0, 2 * k)))
            path = link.produce(banned)
            assert len(path) == k + 1
            assert (path[0], path[-1]) == link.endpoints
            assert len(set(path)) == k + 1
            assert not (set(path[1:-1]) & banned)
            for u, v in zip(path, path[1:]):
                assert host.graph.has_edge(u, v)
            trials += 1
    assert trials >= 1000

    for s, k, t, legs, pool in [(2, 2, 2, [1, 2], 16),
                                (2, 3, 2, [1, 2], 24),
                                (3, 2, 2, [1, 2, 2], 24)]:
        fam = ProductEmbeddingFamily.build(LabeledTree.spider(legs), pool)
        w = spider_linkage(fam, fam.canonical_member(), k, t)
        spec = PatternSpec("kst-subdivision", s=s, t=t, k=k, r=1)
        assert verify_witness(fam.host, spec, w)
    report(6, "path and spider linkage producers",
           f"({trials} path trials + 3 spider assemblies)")


# criterion 7 -----------------------------------------------------------


def test_07_light_path_property():
    p, r = 2, 1
    for d in (8, 12, 16):
        for k in (2, 3):
            h = p ** 4 * k * k * r * r
            host = BipartiteGraph.complete(d, d)
            paths, rep = light_path_collection(host, k, h)
            assert rep["count"] > 0, (d, k)
            bound = h ** 4
            nbrs = {v: set(host.adj(v)) for v in host.part_m}
            for seq in paths:
                assert len(seq) == k + 1
                assert len(set(seq)) == len(seq)
                for i in range(0, len(seq) - 2, 2):
                    common = len(nbrs[seq[i]] & nbrs[seq[i + 2]])
                    assert 0 < common < bound
    report(7, "light-path collections on complete hosts",
           "(d in {8,12,16}, k in {2,3})")


# criterion 8 -----------------------------------------------------------


def test_08_balance_intervals():
    started = time.monotonic()
    # even paths P_{2k}: balanced on a superset of [(k-1)/k, k/(k-1)]
    for k in (2, 3, 4):
        ivs = []
        for orient in (True, False):
            ivs.append(balanced_interval_verified(
                OrientedTree(LabeledTree.path(2 * k - 1), orient)))
        both = ivs[0].intersect(ivs[1])
        assert both.lower <= Fraction(k - 1, k)
        assert both.upper is None or both.upper >= Fraction(k, k - 1)
    # P_2 is vacuously balanced everywhere
    for alpha in (Fraction(1, 2), 1, 2):
        assert check_alpha_balanced(OrientedTree(LabeledTree.path(1)),
                                    alpha).balanced
    # odd paths P_{2k+1}: exactly [k/(k+1), (k+1)/k]
    for k in (1, 2, 3, 4):
        ivs = []
        for orient in (True, False):
            ivs.append(balanced_interval_verified(
                OrientedTree(LabeledTree.path(2 * k), orient)))
        both = ivs[0].intersect(ivs[1])
        assert both.lower == Fraction(k, k + 1)
        assert both.upper == Fraction(k + 1, k)
    # uniform spiders
    for s in (2, 3):
        for k in (2, 3):
            tree = LabeledTree.spider([k] * s)
            for orient in (True, False):
                balanced_interval_verified(OrientedTree(tree, orient))
    # the pendant-path counterexample
    tree = LabeledTree.general(8, [(1, 2), (2, 3), (3, 4),
                                   (1, 5), (2, 6), (3, 7), (4, 8)])
    ot = OrientedTree(tree, True)
    rep = check_alpha_balanced(ot, Fraction(2, 5))
    assert not rep.balanced and rep.failing_set == (4,)
    with pytest.raises(VerificationFailed):
        balanced_interval_verified(ot)
    elapsed = time.monotonic() - started
    assert elapsed < 10
    report(8, "balance intervals", f"({elapsed:.1f}s)")


# criterion 9 -----------------------------------------------------------


def test_09_construction_statistics():
    started = time.monotonic()
    fam, _, _ = preset_family("theta-even", 1)
    for q in (3, 5):
        spec0 = ConstructionSpec.from_family(fam, 1, q, 0, degree=3)
        assert spec0.num_polys == 1 and spec0.ell == 2
        pairs = spec0.m_size() * spec0.n_size()
        seeds = 1000
        total = 0
        for s in range(seeds):
            child = ConstructionSpec(spec0.family, spec0.alpha, spec0.ell,
                                     spec0.q, spec0.rho, spec0.degree,
                                     spec0.num_polys, spec0.prune_c, s)
            total += sample_construction(child).e
        n_obs = seeds * pairs
        p_exp = q ** -1.0
        sigma = math.sqrt(p_exp * (1 - p_exp) / n_obs)
        freq = total / n_obs
        assert abs(freq - p_exp) <= 3 * sigma, (q, freq, p_exp, 3 * sigma)

        ot = OrientedTree(LabeledTree.path(2))
        for s in range(3):
            child = ConstructionSpec(spec0.family, spec0.alpha, spec0.ell,
                                     spec0.q, spec0.rho, spec0.degree,
                                     spec0.num_polys, 3, s)
            g = sample_construction(child)
            pruned = prune_bad_roots(g, ot, 3)
            for a in sorted(pruned.part_m):
                for b in sorted(pruned.part_m):
                    if a != b:
                        assert count_rooted_copies(pruned, ot, (a, b)) < 3
    elapsed = time.monotonic() - started
    assert elapsed < 120, f"took {elapsed:.1f}s"
    report(9, "construction statistics + pruning recount",
           f"({elapsed:.1f}s)")


# criterion 10 ----------------------------------------------------------


def _canonical_reps(a, b):
    """Side-preserving isomorphism class representatives of bipartite
    graphs with parts (a, b): sorted column multisets, deduplicated by
    the minimum over row permutations."""
    perms = list(itertools.permutations(range(a)))
    tables = []
    for perm in perms:
        table = []
        for mask in range(1 << a):
            out = 0
            for i in range(a):
                if mask >> i & 1:
                    out |= 1 << perm[i]
            table.append(out)
        tables.append(table)
    seen = set()
    for cols in itertools.combinations_with_replacement(range(1 << a), b):
        canon = min(tuple(sorted(t[c] for c in cols)) for t in tables)
        if canon not in seen:
            seen.add(canon)
            yield canon


def _graph_from_cols(a, cols):
    edges = []
    for j, mask in enumerate(cols):
        for i in range(a):
            if mask >> i & 1:
                edges.append((i, a + j))
    return BipartiteGraph.build(range(a), range(a, a + len(cols)), edges)


def _naive_theta2(g, s):
    base = g.graph
    for u, v in itertools.combinations(base.vertices, 2):
        if len(set(base.adj[u]) & set(base.adj[v])) >= s:
            return True
    return False


def test_10_finder_soundness():
    checks = [(PatternSpec("theta", s=2, k=2), lambda g: _naive_theta2(g, 2)),
              (PatternSpec("theta", s=3, k=2), lambda g: _naive_theta2(g, 3)),
              (PatternSpec("complete-bipartite", s=2, t=2),
               lambda g: _naive_theta2(g, 2))]
    classes = 0
    for a in range(1, 5):
        for b in range(a, 9 - a):
            for cols in _canonical_reps(a, b):
                g = _graph_from_cols(a, cols)
                classes += 1
                for spec, naive in checks:
                    w = find_pattern(g, spec)
                    assert (w is not None) == naive(g), (a, cols, spec)
                    if w is not None:
                        assert verify_witness(g, spec, w)
    rng = random.Random(1010)
    sampled = 0
    for _ in range(300):
        total = rng.choice([9, 10])
        a = rng.randint(1, total - 1)
        g = random_bipartite(rng, a, total - a, rng.uniform(0.15, 0.9))
        sampled += 1
        for spec, naive in checks:
            w = find_pattern(g, spec)
            assert (w is not None) == naive(g)
            if w is not None:
                assert verify_witness(g, spec, w)
    report(10, "finder soundness vs naive reference",
           f"({classes} classes exhaustively, {sampled} sampled)")


# criterion 11 ----------------------------------------------------------


def test_11_cli_determinism(tmp_path):
    from turanreg.cli import main

    rng = random.Random(1111)
    (tmp_path / "g.edges").write_text(
        format_edge_list(random_graph(rng, 64, 700)))
    (tmp_path / "kb.edges").write_text(
        format_edge_list(BipartiteGraph.complete(16, 64)))
    (tmp_path / "spec.json").write_text(json.dumps(
        {"preset": "theta-even", "k": 1, "q": 3, "alpha": "1",
         "seed": 2, "degree": 3}))
    cases = [
        ["regularize", str(tmp_path / "g.edges"), "--c", "1",
         "--epsilon", "0.5"],
        ["biregularize", str(tmp_path / "kb.edges"), "--c", "1",
         "--alpha", "0.55", "--beta", "0.55"],
        ["construct", str(tmp_path / "spec.json"), "--trials", "2"],
        ["find", str(tmp_path / "kb.edges"), "--pattern", "biclique",
         "--s", "2", "--t", "2"],
    ]
    runs = 0
    for case in cases:
        snapshots = []
        for rep in range(3):
            for threads in ("1", "4"):
                out = tmp_path / f"out_{rep}_{threads}.json"
                code = main(case + ["--seed", "3", "--threads", threads,
                                    "--out", str(out)])
                assert code == 0
                doc = json.loads(out.read_text())
                doc.pop("timing_seconds")
                doc.pop("threads")
                snapshots.append(json.dumps(doc, sort_keys=True))
                runs += 1
        assert len(set(snapshots)) == 1, case
    report(11, "CLI determinism", f"({runs} replays)")
