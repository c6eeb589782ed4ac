"""Regularization toolkit: almost-regular and almost-biregular subgraph
extraction with certificates, roof and matching primitives, tree-copy
machinery for subdivision finding, exact pattern finders, and random
algebraic bipartite constructions."""

__version__ = "0.1.0"

from .biregularize import (BiregularizationCertificate, Roof,
                           WeakBiregularityCertificate, biregularize,
                           biregularize_with_floor,
                           check_biregularization_certificate,
                           half_to_biregular, min_roof, one_side_regularize,
                           roof_bottleneck_oracle, weak_biregularize)
from .construct import (BalanceReport, ConstructionSpec, OrientedTree,
                        PrimePolynomial, RationalInterval,
                        balanced_interval_verified, check_alpha_balanced,
                        compute_rho_ell, lower_bound_report, maximal_interval,
                        min_union_edges, preset_family, prune_bad_roots,
                        sample_construction)
from .families import (EmbeddingFamily, classify_heavy, enumerate_copies,
                       is_admissible, is_heavy)
from .finders import (PatternSpec, Witness, find_complete_bipartite,
                      find_pattern, greedy_assemble, verify_witness)
from .graphs import (BipartiteGraph, DegreeStats, Graph, almost_biregularity,
                     almost_regularity, format_edge_list, half_regularize,
                     parse_edge_list, peel_bipartite, peel_to_min_degree)
from .machinery import (ProductEmbeddingFamily, Refusal, certify_linked,
                        count_heavy_admissible, extract_robust,
                        find_admissible_subpath, find_admissible_subspider,
                        light_path_collection, light_pair_graph, path_linkage,
                        robust_extend, spider_linkage, verify_robust)
from .regularize import (PyberResult, RegularizationCertificate,
                         check_certificate, enhanced_regularize,
                         matching_cascade, pyber_matching)
from .trees import LabeledTree

__all__ = [name for name in dir() if not name.startswith("_")]
