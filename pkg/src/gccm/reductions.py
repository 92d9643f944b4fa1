"""Dominated and absorbed vertices.

A vertex ``v`` is dominated by a neighbor ``u`` when ``N[v] <= N[u]``; some
optimal solution avoids every dominated vertex.  An absorbed vertex ``v``
additionally reaches every admissible center only through a single neighbor
``rho[v]``, so ``dist(v, S) == dist(rho[v], S) + 1`` and its cost can be
folded into the absorber's objective coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .graph import Graph


@dataclass
class DominationStats:
    pair_tests: int = 0
    merge_steps: int = 0

    @property
    def operations(self) -> int:
        return self.pair_tests + self.merge_steps


@dataclass
class ReductionResult:
    k: int
    dominated: list[int]
    absorbed: list[int]
    alpha: dict[int, int]
    rho: dict[int, int]
    stats: DominationStats = field(default_factory=DominationStats)

    @property
    def dominated_set(self) -> frozenset:
        return frozenset(self.dominated)

    @property
    def absorbed_set(self) -> frozenset:
        return frozenset(self.absorbed)

    def centers(self, n: int) -> list[int]:
        """Vertices eligible as centers, i.e. ``V \\ D``."""
        dom = self.dominated_set
        return [v for v in range(n) if v not in dom]

    def kept(self, n: int) -> list[int]:
        """Vertices that keep ILP variables, i.e. ``V \\ A``."""
        ab = self.absorbed_set
        return [v for v in range(n) if v not in ab]


def dominates(g: Graph, u: int, v: int) -> bool:
    """``N[v] <= N[u]`` for distinct vertices."""
    if u == v or not g.has_edge(u, v):
        return False
    return kernels.closed_subset(g.indptr, g.indices, v, u)[0]


def compute_dominated(g: Graph, k: int, stats: DominationStats | None = None) -> list[int]:
    """Greedy dominated set with a surviving dominator for every member.

    Vertices are scanned in increasing id.  ``v`` is marked when some
    unmarked neighbor ``u`` has ``N[v] <= N[u]``; for twins
    (``N[v] == N[u]``) only the larger id is marked.  Marking stops once
    ``n - |D|`` would fall below ``k``.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} must lie in [1, {g.n}]")
    if stats is None:
        stats = DominationStats()
    indptr, indices = g.indptr, g.indices
    deg = g.degrees
    marked = [False] * g.n
    dominated = []
    for v in range(g.n):
        if g.n - len(dominated) <= k:
            break
        dv = deg[v]
        for u in indices[indptr[v]:indptr[v + 1]]:
            u = int(u)
            if marked[u] or deg[u] < dv:
                continue
            stats.pair_tests += 1
            ok, steps = kernels.closed_subset(indptr, indices, v, u)
            stats.merge_steps += steps
            if not ok:
                continue
            if deg[u] == dv and u > v:
                # twins: the lower id survives
                continue
            marked[v] = True
            dominated.append(v)
            break
    return dominated


def cut_vertices(g: Graph) -> list[int]:
    """Articulation points via an iterative lowpoint DFS."""
    n = g.n
    indptr, indices = g.indptr, g.indices
    disc = [-1] * n
    low = [0] * n
    is_cut = [False] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frames: (vertex, parent, next edge position)
        stack = [[root, -1, indptr[root]]]
        while stack:
            frame = stack[-1]
            v, parent, pos = frame
            if pos < indptr[v + 1]:
                frame[2] = pos + 1
                w = int(indices[pos])
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append([w, v, indptr[w]])
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        is_cut[parent] = True
        if root_children > 1:
            is_cut[root] = True
    return [v for v in range(n) if is_cut[v]]


def absorb_leaves(g: Graph, dominated) -> dict[int, int]:
    """Rule R1: each degree-1 dominated vertex goes to its neighbor."""
    dom = set(dominated)
    rho = {}
    for v in sorted(dom):
        if g.degree(v) != 1:
            continue
        u = int(g.neighbors(v)[0])
        if u in rho or v in rho.values():
            continue
        rho[v] = u
    return rho


def absorb_components(g: Graph, dominated, cuts=None) -> dict[int, int]:
    """Rule R2: whole components of ``G - u`` dominated by cut vertex ``u``.

    A component qualifies when every member lies in ``D`` and is dominated by
    ``u``.  Such members are all neighbors of ``u``, so the component is found
    by a search restricted to ``N(u)``.
    """
    dom = set(dominated)
    if cuts is None:
        cuts = cut_vertices(g)
    rho: dict[int, int] = {}
    absorbers: set[int] = set()
    for u in cuts:
        if u in rho:
            continue
        nbrs = [int(w) for w in g.neighbors(u)]
        good = {w for w in nbrs if w in dom and w not in absorbers and dominates(g, u, w)}
        seen: set[int] = set()
        for start in nbrs:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            ok = start in good
            i = 0
            while i < len(comp):
                x = comp[i]
                i += 1
                for y in g.neighbors(x):
                    y = int(y)
                    if y == u or y in seen:
                        continue
                    if y not in good:
                        # escapes the dominated part of N(u); stop growing
                        ok = False
                        continue
                    seen.add(y)
                    comp.append(y)
            if ok and len(comp) < g.n - 1 and not any(x in rho for x in comp):
                for x in comp:
                    rho[x] = u
                absorbers.add(u)
    return rho


def compute_absorbed(g: Graph, dominated) -> tuple[list[int], dict[int, int], dict[int, int]]:
    """Absorbed set, per-vertex absorption counts and the absorber map."""
    rho = absorb_components(g, dominated)
    for v, u in absorb_leaves(g, dominated).items():
        if v in rho or u in rho or v in rho.values():
            continue
        rho[v] = u
    alpha = {v: 0 for v in range(g.n) if v not in rho}
    for v, u in rho.items():
        alpha[u] += 1
    return sorted(rho), alpha, dict(sorted(rho.items()))


def reduce_graph(g: Graph, k: int) -> ReductionResult:
    stats = DominationStats()
    D = compute_dominated(g, k, stats)
    A, alpha, rho = compute_absorbed(g, D)
    return ReductionResult(k, D, A, alpha, rho, stats)


def no_reduction(g: Graph, k: int) -> ReductionResult:
    return ReductionResult(k, [], [], {v: 0 for v in range(g.n)}, {})
