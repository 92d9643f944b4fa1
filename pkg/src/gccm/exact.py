"""Exhaustive enumeration and set-enumeration branch-and-bound.

Both solvers minimize a truncated weighted distance cost::

    cost(S) = sum_v weight[v] * min(dist(v, S), cap[v])

Plain group farness is the case ``weight = 1`` and ``cap = n``.  The cost is
a minimum over centers of a monotone function of distance, hence
supermodular, which is what makes the marginal-gain lower bound valid.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .graph import Graph

BRUTE_FORCE_LIMIT = 10**7


class SolverTimeout(RuntimeError):
    pass


@dataclass
class ExactResult:
    set: list[int] | None
    value: int | None
    status: str = "optimal"
    nodes: int = 0
    pruned: int = 0


@dataclass
class TruncatedCost:
    """Per-vertex weight and distance cap over a graph."""

    g: Graph
    weight: np.ndarray
    cap: np.ndarray
    offset: int = 0

    @classmethod
    def farness(cls, g: Graph) -> "TruncatedCost":
        return cls(g, np.ones(g.n, dtype=np.int64), np.full(g.n, g.n, dtype=np.int32))

    def empty_dist(self) -> np.ndarray:
        return np.full(self.g.n, kernels.INF, dtype=np.int32)

    def value_of_dist(self, dist: np.ndarray) -> int:
        lv = np.minimum(dist, self.cap).astype(np.int64)
        return int((self.weight * lv).sum()) + self.offset

    def value(self, S) -> int:
        if not len(S):
            return self.value_of_dist(self.empty_dist())
        return self.value_of_dist(kernels.multi_bfs(self.g.indptr, self.g.indices, list(S)))

    def gain(self, dist: np.ndarray, c: int) -> int:
        return kernels.marginal_gain(self.g.indptr, self.g.indices, dist, self.weight, self.cap, c)

    def add(self, dist: np.ndarray, c: int) -> np.ndarray:
        child = dist.copy()
        kernels.add_center(self.g.indptr, self.g.indices, child, c)
        return child


class MatrixCost:
    """Same cost over an explicit center-by-vertex level table.

    ``levels[c]`` holds, per modelled vertex, the level ``c`` would give it.
    Used for models that carry no graph (e.g. parsed from an LP file).
    """

    def __init__(self, levels: dict[int, np.ndarray], weight, cap, offset=0):
        self.levels = levels
        self.weight = np.asarray(weight, dtype=np.int64)
        self.cap = np.asarray(cap, dtype=np.int64)
        self.offset = offset

    def empty_dist(self) -> np.ndarray:
        return np.full(len(self.weight), kernels.INF, dtype=np.int64)

    def value_of_dist(self, dist) -> int:
        return int((self.weight * np.minimum(dist, self.cap)).sum()) + self.offset

    def value(self, S) -> int:
        dist = self.empty_dist()
        for c in S:
            dist = np.minimum(dist, self.levels[c])
        return self.value_of_dist(dist)

    def gain(self, dist, c: int) -> int:
        cur = np.minimum(dist, self.cap)
        new = np.minimum(cur, self.levels[c])
        return int((self.weight * (cur - new)).sum())

    def add(self, dist, c: int):
        return np.minimum(dist, self.levels[c])


def _check_k(k, candidates):
    if k < 1 or len(candidates) < k:
        raise ValueError(f"need 1 <= k <= |candidates| (k={k}, |candidates|={len(candidates)})")


def brute_force(g: Graph, k: int, candidates=None, cost: TruncatedCost | None = None) -> tuple[list[int], int]:
    """Minimum over all k-subsets; the lexicographically smallest optimum.

    Uses the all-pairs distance matrix and vectorized minima, independent of
    the incremental kernels the other solvers share.
    """
    cand = list(range(g.n)) if candidates is None else sorted({int(c) for c in candidates})
    _check_k(k, cand)
    if comb(len(cand), k) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"C({len(cand)}, {k}) exceeds the enumeration limit {BRUTE_FORCE_LIMIT}")
    rows = np.stack([kernels.bfs(g.indptr, g.indices, c) for c in cand]).astype(np.int64)
    if cost is not None:
        # weights are non-negative, so the row minimum commutes with weighting
        rows = np.minimum(rows, cost.cap[None, :].astype(np.int64)) * cost.weight[None, :]
        offset = cost.offset
    else:
        offset = 0
    cand_arr = np.asarray(cand)
    best_val, best_set = None, None
    chunk = 20000
    it = combinations(range(len(cand)), k)
    while True:
        block = np.fromiter((i for c in _take(it, chunk) for i in c), dtype=np.int64)
        if not len(block):
            break
        idx = block.reshape(-1, k)
        vals = rows[idx].min(axis=1).sum(axis=1)
        j = int(np.argmin(vals))
        if best_val is None or vals[j] < best_val:
            best_val = int(vals[j])
            best_set = [int(x) for x in cand_arr[idx[j]]]
    return best_set, best_val + offset


def _take(it, n):
    for _ in range(n):
        try:
            yield next(it)
        except StopIteration:
            return


@dataclass
class _Search:
    cost: "TruncatedCost | MatrixCost"
    k: int
    deadline: float | None
    prune: bool = True
    candidate_pruning: bool = True
    trace: list | None = None
    best_val: int | None = None
    best_set: list[int] | None = None
    nodes: int = 0
    pruned: int = 0
    _tick: int = 0

    def check_time(self):
        self._tick += 1
        if self.deadline is not None and self._tick % 64 == 0 and time.monotonic() > self.deadline:
            raise SolverTimeout()

    def offer(self, S, val):
        if self.best_val is None or val < self.best_val:
            self.best_val = val
            self.best_set = sorted(S)

    def explore(self, S, dist, value, cands):
        """Visit node with working set ``S`` and candidate list ``cands``."""
        self.nodes += 1
        self.check_time()
        need = self.k - len(S)
        if need == 0:
            self.offer(S, value)
            return
        if len(cands) < need:
            return
        gains = [(self.cost.gain(dist, c), c) for c in cands]
        gains.sort(key=lambda t: (-t[0], t[1]))
        top = sum(gv for gv, _ in gains[:need])
        bound = value - top
        if self.trace is not None:
            self.trace.append((tuple(S), tuple(cands), bound))
        if self.prune and self.best_val is not None and self.best_val <= bound:
            self.pruned += 1
            return
        if self.prune and self.candidate_pruning and self.best_val is not None and need > 1:
            # c can only help if value - gain(c) - (best need-1 other gains) < incumbent
            kept = []
            for i, (gv, c) in enumerate(gains):
                others = top - gv if i < need else top - gains[need - 1][0]
                if value - gv - others < self.best_val:
                    kept.append((gv, c))
            gains = kept
        order = [c for _, c in gains]
        for i, c in enumerate(order):
            rest = order[i + 1:]
            if len(rest) < need - 1:
                break
            child = self.cost.add(dist, c)
            self.explore(S + [c], child, self.cost.value_of_dist(child), rest)


def solve_truncated(cost, k: int, candidates, time_limit: float | None = None,
                    incumbent=None, prune: bool = True, candidate_pruning: bool = True,
                    trace: list | None = None, deadline: float | None = None) -> ExactResult:
    """Branch-and-bound minimum of ``cost`` over k-subsets of ``candidates``.

    Children are ordered by descending marginal gain.  A node is pruned when
    the incumbent is no worse than ``cost(S_T)`` minus the sum of the
    ``k - |S_T|`` largest marginal gains among its candidates.
    """
    cand = sorted({int(c) for c in candidates})
    _check_k(k, cand)
    if deadline is None and time_limit is not None:
        deadline = time.monotonic() + time_limit
    search = _Search(cost, k, deadline, prune, candidate_pruning, trace)
    if incumbent is not None:
        inc = sorted({int(v) for v in incumbent})
        if len(inc) == k and set(inc) <= set(cand):
            search.offer(inc, cost.value(inc))
    root = cost.empty_dist()
    try:
        search.explore([], root, cost.value_of_dist(root), cand)
    except SolverTimeout:
        return ExactResult(None, None, "timeout", search.nodes, search.pruned)
    return ExactResult(search.best_set, search.best_val, "optimal", search.nodes, search.pruned)


def branch_and_bound(g: Graph, k: int, candidates=None, time_limit: float | None = None,
                     incumbent="approx", **kw) -> ExactResult:
    """Exact group farness minimum by set-enumeration branch-and-bound.

    The incumbent defaults to the greedy + swap search solution.
    """
    cand = list(range(g.n)) if candidates is None else sorted({int(c) for c in candidates})
    _check_k(k, cand)
    if isinstance(incumbent, str) and incumbent == "approx":
        from .heuristics import greedy, local_search_swap

        start = greedy(g, k, candidates=cand)
        incumbent = local_search_swap(g, k, start.set, cand).set
    return solve_truncated(TruncatedCost.farness(g), k, cand, time_limit, incumbent, **kw)


def truncated_cost_for(g: Graph, weight, cap, offset=0) -> TruncatedCost:
    return TruncatedCost(g, np.asarray(weight, dtype=np.int64), np.asarray(cap, dtype=np.int32), offset)

