import json

import pytest

from turanreg.cli import main
from turanreg.graphs import BipartiteGraph, Graph, format_edge_list

from conftest import random_graph
import random


@pytest.fixture
def workdir(tmp_path):
    rng = random.Random(55)
    dense = random_graph(rng, 48, 500)
    (tmp_path / "dense.edges").write_text(format_edge_list(dense))
    (tmp_path / "kb.edges").write_text(
        format_edge_list(BipartiteGraph.complete(16, 64)))
    (tmp_path / "k23.edges").write_text(
        format_edge_list(BipartiteGraph.complete(2, 3)))
    (tmp_path / "sparse.edges").write_text(
        format_edge_list(random_graph(rng, 32, 20)))
    (tmp_path / "bad.edges").write_text("g 3\n0 1\n1 0\n")
    (tmp_path / "spec.json").write_text(json.dumps(
        {"preset": "theta-even", "k": 1, "q": 5, "alpha": "1",
         "seed": 11, "degree": 3}))
    (tmp_path / "badq.json").write_text(json.dumps(
        {"preset": "theta-even", "k": 1, "q": 6, "alpha": "1"}))
    return tmp_path


def run(args):
    return main([str(a) for a in args])


def load(path):
    return json.loads(path.read_text())


class TestExitCodes:
    def test_regularize_ok(self, workdir):
        out = workdir / "r.json"
        assert run(["regularize", workdir / "dense.edges",
                    "--c", "1", "--epsilon", "0.2", "--out", out]) == 0
        doc = load(out)
        assert doc["report"]["certificate"]["edge_ok"]

    def test_regularize_sparse_exit2(self, workdir):
        assert run(["regularize", workdir / "sparse.edges",
                    "--c", "0.5", "--epsilon", "0.5"]) == 2

    def test_malformed_exit1(self, workdir):
        assert run(["regularize", workdir / "bad.edges",
                    "--c", "1", "--epsilon", "0.2"]) == 1

    def test_biregularize_ok(self, workdir):
        out = workdir / "b.json"
        assert run(["biregularize", workdir / "kb.edges", "--c", "1",
                    "--alpha", "0.55", "--beta", "0.55", "--out", out]) == 0

    def test_biregularize_bad_exponents_exit2(self, workdir):
        assert run(["biregularize", workdir / "kb.edges", "--c", "1",
                    "--alpha", "0.5", "--beta", "0.5"]) == 2

    def test_weak_low_target_exit2(self, workdir):
        assert run(["biregularize", workdir / "kb.edges", "--c", "0.5",
                    "--alpha", "0.8", "--beta", "0.8", "--variant", "weak",
                    "--eps", "2", "--target-degree", "10"]) == 2

    def test_find_found_exit0(self, workdir):
        assert run(["find", workdir / "k23.edges", "--pattern", "theta",
                    "--s", "3", "--k", "2"]) == 0

    def test_find_not_found_exit4(self, workdir):
        assert run(["find", workdir / "k23.edges", "--pattern", "theta",
                    "--s", "4", "--k", "2"]) == 4

    def test_find_ceiling_exit3(self, tmp_path):
        cyc = Graph.build(range(40), [(i, (i + 1) % 40) for i in range(40)])
        f = tmp_path / "cyc.edges"
        f.write_text(format_edge_list(cyc))
        assert run(["find", f, "--pattern", "theta", "--s", "2", "--k", "6",
                    "--guard", "50"]) == 3

    def test_construct_ok(self, workdir):
        out = workdir / "c.json"
        assert run(["construct", workdir / "spec.json", "--trials", "2",
                    "--out", out]) == 0
        doc = load(out)
        assert len(doc["report"]["report"]["trials"]) == 2

    def test_construct_nonprime_exit2(self, workdir):
        assert run(["construct", workdir / "badq.json"]) == 2

    def test_roof(self, workdir):
        out = workdir / "roof.json"
        assert run(["roof", workdir / "k23.edges", "--out", out]) == 0
        assert load(out)["report"]["delta"] == 2

    def test_verify_heavy_paths(self, workdir):
        out = workdir / "v.json"
        assert run(["verify", workdir / "kb.edges", "--check", "heavy-paths",
                    "--j", "2", "--eta", "4", "--k", "2", "--eps", "0.5",
                    "--out", out]) == 0

    def test_balance(self, workdir):
        out = workdir / "bal.json"
        assert run(["balance", "--tree", "path:3", "--out", out]) == 0
        doc = load(out)
        assert doc["report"]["interval"] == {"lower": "1/2", "upper": "2"}


def strip_timing(doc):
    # timing and the echoed worker cap are run metadata, not report content
    doc = dict(doc)
    doc.pop("timing_seconds", None)
    doc.pop("threads", None)
    return doc


class TestDeterminism:
    CASES = [
        (["regularize", "{dense}", "--c", "1", "--epsilon", "0.2"], None),
        (["biregularize", "{kb}", "--c", "1", "--alpha", "0.55",
          "--beta", "0.55"], None),
        (["roof", "{k23}"], None),
        (["find", "{k23}", "--pattern", "theta", "--s", "3", "--k", "2"], None),
        (["construct", "{spec}", "--trials", "2"], None),
        (["balance", "--tree", "spider:2,2"], None),
    ]

    def test_golden_repetitions_and_thread_counts(self, workdir):
        subst = {"dense": workdir / "dense.edges", "kb": workdir / "kb.edges",
                 "k23": workdir / "k23.edges", "spec": workdir / "spec.json"}
        for base, _ in self.CASES:
            args = [str(a).format(**{k: str(v) for k, v in subst.items()})
                    for a in base]
            docs = []
            for rep in range(3):
                for threads in ("1", "4"):
                    out = workdir / f"g{rep}_{threads}.json"
                    code = run(args + ["--seed", "7", "--threads", threads,
                                       "--out", out])
                    assert code == 0
                    docs.append(strip_timing(load(out)))
            first = docs[0]
            for other in docs[1:]:
                assert other == first, args


class TestVerifyChecks:
    def test_heavy_2paths(self, workdir):
        out = workdir / "v2.json"
        assert run(["verify", workdir / "kb.edges", "--check", "heavy-2-paths",
                    "--eta", "4", "--eps", "0.5", "--p", "2", "--k", "3",
                    "--out", out]) == 0
        rep = load(out)["report"]["report"]
        assert "count" in rep and "bound" in rep

    def test_subdivision_density(self, workdir):
        out = workdir / "v3.json"
        assert run(["verify", workdir / "k23.edges",
                    "--check", "subdivision-density", "--k", "1", "--s", "2",
                    "--t", "2", "--r", "1", "--out", out]) == 0
        rep = load(out)["report"]["report"]
        assert rep["holds"] or rep["hypothesis_void"]

    def test_clique_density(self, workdir):
        out = workdir / "v4.json"
        assert run(["verify", workdir / "k23.edges", "--check",
                    "clique-density", "--k", "2", "--p", "2", "--r", "1",
                    "--eta", "4", "--ramsey-budget", "3", "--out", out]) == 0

    def test_guard_exceeded_exit3(self, workdir):
        assert run(["verify", workdir / "kb.edges", "--check", "heavy-paths",
                    "--j", "3", "--eta", "4", "--guard", "100"]) == 3
