#!/usr/bin/env python3
"""Sweep the regularization pipelines over a random-instance grid and
print the certificate margins (realized value / claimed bound)."""
import argparse
import itertools
import math
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from turanreg.biregularize import biregularize
from turanreg.graphs import BipartiteGraph, Graph
from turanreg.regularize import enhanced_regularize


def random_graph(rng, n, e):
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.build(range(n), rng.sample(pairs, min(e, len(pairs))))


def random_bipartite(rng, m, n, p):
    edges = [(u, v) for u in range(m) for v in range(m, m + n)
             if rng.random() < p]
    return BipartiteGraph.build(range(m), range(m, m + n), edges)


def sweep_regular(rng, sizes):
    print(f"{'n':>5} {'c':>4} {'eps':>4} {'e(G)':>7} {'m':>5} {'e(H)':>7} "
          f"{'ratio':>6} {'edge margin':>12} {'degree margin':>14}")
    for n in sizes:
        for c, eps in itertools.product((0.5, 1.0), (0.2, 0.5, 0.8)):
            need = math.ceil(c * n ** (1 + eps))
            cap = n * (n - 1) // 2
            if need > cap:
                continue
            g = random_graph(rng, n, min(cap, int(need * 1.3)))
            h, cert = enhanced_regularize(g, c, eps)
            ratio = cert.output_max_degree / cert.output_min_degree
            print(f"{n:>5} {c:>4} {eps:>4} {g.e:>7} {cert.output_m:>5} "
                  f"{cert.output_e:>7} {ratio:>6.2f} "
                  f"{cert.output_e / cert.edge_bound:>12.1f} "
                  f"{(2 * cert.output_e / cert.output_m) / cert.avg_degree_bound:>14.1f}")


def sweep_biregular(rng, sizes):
    print(f"\n{'m':>4} {'n':>5} {'e(G)':>7} {'m_out':>5} {'n_out':>5} "
          f"{'ratio_m':>7} {'ratio_n':>7} {'edge margin':>12} {'deg margin':>11}")
    for m in sizes:
        n = 3 * m
        g = random_bipartite(rng, m, n, 0.8)
        if g.e == 0 or g.avg_degree() < 8:
            continue
        out, cert = biregularize(g, 0.25, 0.6, 0.6)
        print(f"{m:>4} {n:>5} {g.e:>7} {cert.output_m:>5} {cert.output_n:>5} "
              f"{cert.ratio_m:>7.2f} {cert.ratio_n:>7.2f} "
              f"{cert.output_e / cert.edge_bound:>12.1f} "
              f"{cert.output_avg_degree / cert.degree_floor:>11.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sizes", type=str, default="64,128,256")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    sizes = [int(x) for x in args.sizes.split(",")]
    sweep_regular(rng, sizes)
    sweep_biregular(rng, [max(8, s // 8) for s in sizes])


if __name__ == "__main__":
    main()
