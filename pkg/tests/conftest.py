"""Shared random-instance generators (all deterministic via explicit seeds)."""
import random
from itertools import combinations

import pytest

from turanreg.graphs import BipartiteGraph, Graph


def random_graph(rng: random.Random, n: int, e: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph.build(range(n), rng.sample(pairs, min(e, len(pairs))))


def random_bipartite(rng: random.Random, m: int, n: int, p: float) -> BipartiteGraph:
    edges = [(u, v) for u in range(m) for v in range(m, m + n)
             if rng.random() < p]
    return BipartiteGraph.build(range(m), range(m, m + n), edges)


def random_half_regular(rng: random.Random, a: int, b: int, d: int) -> BipartiteGraph:
    """Every A-vertex gets exactly d distinct neighbors on the B side."""
    edges = []
    for u in range(a):
        for v in rng.sample(range(a, a + b), d):
            edges.append((u, v))
    return BipartiteGraph.build(range(a), range(a, a + b), edges)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
