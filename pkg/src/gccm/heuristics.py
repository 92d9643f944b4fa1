"""Greedy construction and the swap local search (5-approximation on farness)."""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph, group_farness
from .reductions import ReductionResult


@dataclass
class HeuristicSolution:
    set: list[int]
    farness: int
    evaluations: int = 0
    swaps: int = 0


def _unit_costs(g: Graph):
    return np.ones(g.n, dtype=np.int64), np.full(g.n, g.n, dtype=np.int32)


def greedy(g: Graph, k: int, lazy: bool = True, candidates=None) -> HeuristicSolution:
    """Add the vertex with the largest farness reduction, ``k`` times.

    The first pick minimizes singleton farness.  Ties go to the lowest id.
    Marginal gains come from a pruned BFS over the current distance vector.
    With ``lazy=True`` stale gains serve as upper bounds (farness is
    supermodular, so gains only shrink as the set grows) and only the top of
    the heap is re-evaluated; the result is identical to ``lazy=False``.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} must lie in [1, {g.n}]")
    cand = list(range(g.n)) if candidates is None else sorted(set(candidates))
    if len(cand) < k:
        raise ValueError("fewer candidates than k")
    indptr, indices = g.indptr, g.indices
    weight, cap = _unit_costs(g)
    # Empty set: every vertex sits at the virtual distance n, so the first
    # marginal gain ranks singletons exactly by farness.
    dist = np.full(g.n, g.n, dtype=np.int32)
    chosen: list[int] = []
    evals = 0
    if lazy:
        heap = []
        for v in cand:
            gain = kernels.marginal_gain(indptr, indices, dist, weight, cap, v)
            evals += 1
            heap.append((-gain, v, 0))
        heapq.heapify(heap)
        for it in range(k):
            while True:
                neg, v, stamp = heapq.heappop(heap)
                if stamp == it:
                    break
                gain = kernels.marginal_gain(indptr, indices, dist, weight, cap, v)
                evals += 1
                heapq.heappush(heap, (-gain, v, it))
            chosen.append(v)
            kernels.add_center(indptr, indices, dist, v)
    else:
        remaining = list(cand)
        for _ in range(k):
            best, best_gain = -1, -1
            for v in remaining:
                gain = kernels.marginal_gain(indptr, indices, dist, weight, cap, v)
                evals += 1
                if gain > best_gain:
                    best, best_gain = v, gain
            chosen.append(best)
            remaining.remove(best)
            kernels.add_center(indptr, indices, dist, best)
    return HeuristicSolution(sorted(chosen), int(dist.sum(dtype=np.int64)), evals, 0)


def local_search_swap(g: Graph, k: int, initial, search_space=None) -> HeuristicSolution:
    """First-improvement swap search.

    Scans ``s`` in ``S`` and then ``o`` in ``search_space \\ S`` in ascending
    id, applies the first swap that strictly lowers farness and restarts the
    scan.  Stops when no swap improves, which gives ``f(S) <= 5 f(S*)`` as long
    as ``search_space`` contains an optimal solution.
    """
    S = sorted({int(v) for v in initial})
    if len(S) != k or len(list(initial)) != k:
        raise ValueError(f"initial set must contain exactly k={k} distinct vertices")
    space = list(range(g.n)) if search_space is None else sorted({int(v) for v in search_space})
    if not set(S) <= set(space):
        raise ValueError("initial set must lie inside the search space")
    f = group_farness(g, S)
    swaps = evals = 0
    improved = True
    while improved:
        improved = False
        members = set(S)
        for s in S:
            rest = [x for x in S if x != s]
            for o in space:
                if o in members:
                    continue
                evals += 1
                fo = group_farness(g, rest + [o])
                if fo < f:
                    S = sorted(rest + [o])
                    f = fo
                    swaps += 1
                    improved = True
                    break
            if improved:
                break
    return HeuristicSolution(S, f, evals, swaps)


def approx_pipeline(g: Graph, k: int, reduction: ReductionResult | None = None,
                    use_dominated: bool = True) -> HeuristicSolution:
    """Greedy start followed by swap search over ``V \\ D``."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} must lie in [1, {g.n}]")
    space = None
    if use_dominated and reduction is not None:
        space = reduction.centers(g.n)
    start = greedy(g, k, candidates=space)
    res = local_search_swap(g, k, start.set, space)
    res.evaluations += start.evaluations
    return res
