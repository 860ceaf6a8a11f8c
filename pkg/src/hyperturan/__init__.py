"""Experimental extremal combinatorics on random 3-uniform hypergraphs.

Sample G^3(n, p), count F5 and K4^- copies, compute maximum F5-free and
maximum tripartite subhypergraphs exactly, and audit structural quantities
of (G, F, partition) instances.
"""
from ._backend import available as available_backends, current as current_backend, use as use_backend
from .core import (Hypergraph3, PairGraph, co_neighborhood, common_link, decode, degree,
                   dump, encode, link_graph, load, shadow_graph)
from .sampling import SampleSpec, sample, sample_gnp, threshold_p, trial_seed
from .census import (F5Copy, K4MinusCopy, conflict_constraints, count_f5, enumerate_f5, enumerate_k4minus,
                     is_f5_free, untouched_k4minus_witness)
from .partition import (CrossingDecomposition, TriPartition, bad_degree_report, common_crossing_degree,
                        crossing_count, crossing_degree, decompose, is_balanced, is_tripartite, max_tripartite_exact,
                        max_tripartite_local, q_set)
from .solver import SolveResult, all_max_f5free, greedy_f5free, is_feasible, max_f5free_bnb, max_f5free_oracle
from .audit import (CONSTANTS, ConstantsLedger, StructureReport, chernoff_constant, concentration_report,
                    count_f5hat, heavy_pairs, key_lemma_gap, structure_report)

__version__ = "0.1.0"
