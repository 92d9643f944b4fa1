"""Distance-level 0-1 models for group farness minimization.

Variable ``x[v, i] = 1`` means ``v`` sits at distance ``i`` from the chosen
centers.  Rows:

* ``k_sum``: the level-0 variables of center-eligible vertices sum to ``k``;
* ``assign_v``: every modelled vertex takes exactly one level;
* ``link_v_i``: ``x[v, i] <= sum of x[w, 0]`` over centers ``w`` at distance
  exactly ``i`` from ``v``.

The top level ``d(v)`` stands for "at least ``d(v)``" whenever
``d(v) < ecc(v)``, so it has no link row in that case; otherwise the model
would be infeasible for any center set leaving ``v`` further away.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..graph import Graph, bfs, dist_to_set, eccentricities
from ..reductions import ReductionResult


class ModelError(ValueError):
    pass


class InfeasibleAssignment(ValueError):
    """An assignment violates a model row; ``row`` names it."""

    def __init__(self, row: str, detail: str = ""):
        super().__init__(f"assignment violates row {row}" + (f": {detail}" if detail else ""))
        self.row = row


@dataclass
class IlpModel:
    kind: str
    k: int
    vertices: list[int]
    centers: list[int]
    level_cap: dict[int, int]
    alpha: dict[int, int]
    distance_index: dict[tuple[int, int], list[int]]
    g: Graph | None = None
    ecc: dict[int, int] = field(default_factory=dict)

    def coefficient(self, v: int, i: int) -> int:
        a = self.alpha.get(v, 0)
        return a * (i + 1) + i

    def has_level0(self, v: int) -> bool:
        return v in self._center_set

    @property
    def _center_set(self):
        cs = self.__dict__.get("_cs")
        if cs is None:
            cs = self.__dict__["_cs"] = frozenset(self.centers)
        return cs

    def variables(self):
        """``(v, i, coefficient)`` in ascending vertex, then level order."""
        for v in self.vertices:
            for i in range(0 if self.has_level0(v) else 1, self.level_cap[v] + 1):
                yield v, i, self.coefficient(v, i)

    @property
    def num_variables(self) -> int:
        return sum(self.level_cap[v] + (1 if self.has_level0(v) else 0) for v in self.vertices)

    def rows(self):
        """Yield ``(name, {var: coef}, sense, rhs)`` in export order."""
        yield "k_sum", {(v, 0): 1 for v in self.centers}, "=", self.k
        for v in self.vertices:
            lo = 0 if self.has_level0(v) else 1
            yield f"assign_{v}", {(v, i): 1 for i in range(lo, self.level_cap[v] + 1)}, "=", 1
        for v in self.vertices:
            for i in range(1, self.level_cap[v] + 1):
                if (v, i) in self.distance_index:
                    terms = {(v, i): 1}
                    for w in self.distance_index[(v, i)]:
                        terms[(w, 0)] = terms.get((w, 0), 0) - 1
                    yield f"link_{v}_{i}", terms, "<=", 0

    def objective(self, assignment) -> int:
        return sum(c for v, i, c in self.variables() if assignment.get((v, i), 0))

    def check(self, assignment) -> None:
        """Raise :class:`InfeasibleAssignment` naming the first violated row."""
        for name, terms, sense, rhs in self.rows():
            lhs = sum(c * assignment.get(var, 0) for var, c in terms.items())
            if (sense == "=" and lhs != rhs) or (sense == "<=" and lhs > rhs):
                raise InfeasibleAssignment(name, f"lhs={lhs} {sense} {rhs}")

    def assignment_for(self, S) -> dict[tuple[int, int], int]:
        """Cheapest assignment once the centers ``S`` are fixed."""
        S = sorted(S)
        if self.g is not None:
            dist = dist_to_set(self.g, S)
            lvl = {v: min(int(dist[v]), self.level_cap[v]) for v in self.vertices}
        else:
            lvl = {}
            chosen = set(S)
            for v in self.vertices:
                best = 0 if v in chosen else self.level_cap[v]
                if best:
                    for i in range(1, self.level_cap[v]):
                        if any(w in chosen for w in self.distance_index.get((v, i), ())):
                            best = i
                            break
                lvl[v] = best
        return {(v, i): int(lvl[v] == i) for v, i, _ in self.variables()}


def _validate(g: Graph, k: int, d_map, centers, ecc):
    if not 1 <= k <= g.n:
        raise ModelError(f"k={k} must lie in [1, {g.n}]")
    if len(centers) < k:
        raise ModelError(f"only {len(centers)} center-eligible vertices for k={k}")
    for v, d in d_map.items():
        if d < 0:
            raise ModelError(f"negative level cap for vertex {v}")


def _distance_index(g, vertices, centers, level_cap, ecc):
    center_arr = np.asarray(centers)
    index = {}
    for v in vertices:
        cap = level_cap[v]
        top = cap if cap >= ecc[v] else cap - 1
        if top < 1:
            continue
        dv = bfs(g, v)[center_arr]
        for i in range(1, top + 1):
            index[(v, i)] = [int(w) for w in center_arr[dv == i]]
    return index


def build_full_model(g: Graph, k: int, d_map, dominated=(), ecc=None) -> IlpModel:
    """Per-vertex distance-level model over all of ``V``; no level 0 on ``D``."""
    if ecc is None:
        ecc = eccentricities(g)[0]
    dom = set(dominated)
    centers = [v for v in range(g.n) if v not in dom]
    d_map = {v: int(d_map[v]) for v in range(g.n)}
    _validate(g, k, d_map, centers, ecc)
    vertices = list(range(g.n))
    ecc_d = {v: int(ecc[v]) for v in vertices}
    index = _distance_index(g, vertices, centers, d_map, ecc_d)
    return IlpModel("full", k, vertices, centers, d_map, {}, index, g, ecc_d)


def build_reduced_model(g: Graph, k: int, d_map, reduction: ReductionResult, ecc=None) -> IlpModel:
    """Model over ``V \\ A`` with absorbed costs folded into ``alpha``."""
    if ecc is None:
        ecc = eccentricities(g)[0]
    centers = reduction.centers(g.n)
    vertices = reduction.kept(g.n)
    caps = {v: int(d_map[v]) for v in vertices}
    _validate(g, k, caps, centers, ecc)
    ecc_d = {v: int(ecc[v]) for v in vertices}
    alpha = {v: int(reduction.alpha.get(v, 0)) for v in vertices}
    index = _distance_index(g, vertices, centers, caps, ecc_d)
    return IlpModel("reduced", k, vertices, centers, caps, alpha, index, g, ecc_d)


def estimate_d(g: Graph, approx_set, ecc) -> dict[int, int]:
    """``min(ecc(v), max(dist(v, S~) + 1, 2))`` for every vertex."""
    dist = dist_to_set(g, approx_set)
    return {v: int(min(ecc[v], max(dist[v] + 1, 2))) for v in range(g.n)}


def initial_d(g: Graph, ecc) -> dict[int, int]:
    """Uniform start at level 2, capped by eccentricity."""
    return {v: int(min(2, ecc[v])) for v in range(g.n)}


def check_sufficiency(assignment, d_map, ecc) -> list[int]:
    """Vertices whose top level is active while below their eccentricity."""
    return sorted(v for v, d in d_map.items()
                  if assignment.get((v, d), 0) == 1 and d < ecc[v])


@dataclass
class IterationState:
    d_tilde: dict[int, int]
    ecc: dict[int, int]
    iteration: int = 0
    history: list[tuple[int, int, int]] = field(default_factory=list)

    def bump(self, flagged) -> None:
        for v in flagged:
            self.d_tilde[v] = min(self.d_tilde[v] + 1, self.ecc[v])

    def slack(self) -> int:
        return sum(self.ecc[v] - d for v, d in self.d_tilde.items())


def reconstruct_full_assignment(reduced_assignment, reduction: ReductionResult, d_map):
    """Lift a sufficient reduced solution to the full model.

    Absorbed ``v`` gets cap ``d(rho(v)) + 1`` and copies its absorber's
    levels shifted up by one; everything else is copied unchanged.
    Returns ``(full_assignment, full_d_map)``.
    """
    full_d = {}
    full = {}
    absorbed = reduction.rho
    for v, d in d_map.items():
        if v in absorbed:
            continue
        full_d[v] = d
        for i in range(0, d + 1):
            if (v, i) in reduced_assignment:
                full[(v, i)] = reduced_assignment[(v, i)]
    for v, u in absorbed.items():
        full_d[v] = d_map[u] + 1
        for i in range(1, full_d[v] + 1):
            full[(v, i)] = reduced_assignment.get((u, i - 1), 0)
    return full, dict(sorted(full_d.items()))


@dataclass
class BergaminiModel:
    """Assignment model: ``y_v`` selects centers, ``x_u_v`` assigns ``u`` to ``v``."""

    g: Graph
    k: int
    dist: np.ndarray

    @classmethod
    def build(cls, g: Graph, k: int) -> "BergaminiModel":
        if not 1 <= k <= g.n:
            raise ModelError(f"k={k} must lie in [1, {g.n}]")
        dist = np.stack([bfs(g, v) for v in range(g.n)])
        return cls(g, k, dist)

    @property
    def num_variables(self) -> int:
        return self.g.n + self.g.n * self.g.n

    def assignment_for(self, S):
        S = sorted(S)
        y = {v: int(v in S) for v in range(self.g.n)}
        x = {}
        for u in range(self.g.n):
            best = min(S, key=lambda s: (self.dist[u, s], s))
            for v in range(self.g.n):
                x[(u, v)] = int(v == best)
        return y, x

    def objective(self, y, x) -> int:
        return int(sum(self.dist[u, v] for (u, v), val in x.items() if val))

    def check(self, y, x) -> None:
        n = self.g.n
        if sum(y.values()) != self.k:
            raise InfeasibleAssignment("k_sum")
        for u in range(n):
            if sum(x[(u, v)] for v in range(n)) != 1:
                raise InfeasibleAssignment(f"assign_{u}")
            for v in range(n):
                if x[(u, v)] > y[v]:
                    raise InfeasibleAssignment(f"valid_{u}_{v}")
