"""Exact and approximate group closeness centrality maximization."""
from .graph import (Graph, GraphError, bfs, dist_to_set, eccentricities, group_closeness,
                    group_farness, load_graph, read_graph)
from .kernels import BACKEND as KERNEL_BACKEND
from .reductions import ReductionResult, compute_absorbed, compute_dominated, cut_vertices, reduce_graph
from .heuristics import HeuristicSolution, approx_pipeline, greedy, local_search_swap
from .exact import brute_force, branch_and_bound
from .generators import gen_counterexample, gen_named, gen_random_connected
from .ilp import solve_iteratively

__version__ = "0.1.0"
