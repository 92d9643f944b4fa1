"""The iterative sufficiency loop over truncated distance-level models."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from ..graph import Graph, eccentricities, group_closeness, group_farness
from ..heuristics import approx_pipeline, greedy
from ..reductions import ReductionResult, reduce_graph
from .backends import BackendResult, builtin_backend_solve
from .model import (IlpModel, IterationState, build_full_model, build_reduced_model,
                    check_sufficiency, estimate_d, initial_d)

DEFAULT_TIME_LIMIT = 600.0


@dataclass
class SolveReport:
    graph_name: str
    n: int
    m: int
    k: int
    mode: str
    status: str
    solution: list[int] | None = None
    solution_labels: list | None = None
    farness: int | None = None
    closeness: str | None = None
    iterations: int = 0
    per_iteration_variable_counts: list[int] = field(default_factory=list)
    reduction_stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    # kept for verification, not serialized
    reduction: ReductionResult | None = field(default=None, repr=False)
    last_model: IlpModel | None = field(default=None, repr=False)
    last_result: BackendResult | None = field(default=None, repr=False)
    state: IterationState | None = field(default=None, repr=False)

    def finish(self, g: Graph, S) -> None:
        self.solution = sorted(int(v) for v in S)
        self.solution_labels = [g.labels[v] for v in self.solution]
        self.farness = group_farness(g, self.solution)
        if len(self.solution) < g.n:
            c = group_closeness(g, self.solution)
            self.closeness = f"{c.numerator}/{c.denominator}"

    def to_dict(self) -> dict:
        d = asdict(self, dict_factory=dict)
        for key in ("reduction", "last_model", "last_result", "state"):
            d.pop(key, None)
        d["solution"] = d.pop("solution_labels")
        return d


def _ms(t0):
    return round((time.perf_counter() - t0) * 1000.0, 3)


def solve_iteratively(g: Graph, k: int, mode: str = "grover", backend=None,
                      time_limit: float | None = DEFAULT_TIME_LIMIT) -> SolveReport:
    """Exact minimum group farness by repeatedly solving truncated models.

    ``grover``: reduced model over ``V \\ A`` with initial caps from a
    greedy + swap search solution.  ``ilpind``: full model with dominated
    vertices only and caps starting at 2.  After each solve, every vertex
    whose top level is active below its eccentricity gets its cap raised by
    one; the loop stops at the first sufficient solution.
    """
    if mode not in ("grover", "ilpind"):
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} must lie in [1, {g.n}]")
    backend = backend or builtin_backend_solve
    t_start = time.perf_counter()
    deadline = None if time_limit is None else time.monotonic() + time_limit
    report = SolveReport(g.name, g.n, g.m, k, mode, "optimal")
    timings = {"reduction_ms": 0.0, "heuristic_ms": 0.0, "ilp_ms": 0.0, "total_ms": 0.0}
    report.timings = timings

    if k == 1:
        t0 = time.perf_counter()
        res = greedy(g, 1)
        timings["heuristic_ms"] = _ms(t0)
        report.finish(g, res.set)
        timings["total_ms"] = _ms(t_start)
        return report

    t0 = time.perf_counter()
    ecc, _ = eccentricities(g)
    reduction = reduce_graph(g, k)
    if mode == "ilpind":
        reduction = ReductionResult(k, reduction.dominated, [], {v: 0 for v in range(g.n)}, {},
                                    reduction.stats)
    timings["reduction_ms"] = _ms(t0)
    report.reduction = reduction
    report.reduction_stats = {"dominated": len(reduction.dominated), "absorbed": len(reduction.absorbed)}

    hint = None
    if mode == "grover":
        t0 = time.perf_counter()
        approx = approx_pipeline(g, k, reduction)
        timings["heuristic_ms"] = _ms(t0)
        hint = approx.set
        d0 = estimate_d(g, approx.set, ecc)
    else:
        d0 = initial_d(g, ecc)
    kept = reduction.kept(g.n)
    state = IterationState({v: d0[v] for v in kept}, {v: int(ecc[v]) for v in kept})
    report.state = state

    t0 = time.perf_counter()
    while True:
        if mode == "grover":
            model = build_reduced_model(g, k, state.d_tilde, reduction, ecc)
        else:
            model = build_full_model(g, k, state.d_tilde, reduction.dominated, ecc)
        result = backend(model, hint=hint, deadline=deadline)
        state.iteration += 1
        report.iterations = state.iteration
        report.per_iteration_variable_counts.append(model.num_variables)
        if result.status != "optimal":
            report.status = "timeout"
            break
        flagged = check_sufficiency(result.assignment, state.d_tilde, state.ecc)
        state.history.append((model.num_variables, result.objective, len(flagged)))
        report.last_model, report.last_result = model, result
        if not flagged:
            report.finish(g, result.centers())
            break
        state.bump(flagged)
        hint = result.centers()
        if deadline is not None and time.monotonic() > deadline:
            report.status = "timeout"
            break
    timings["ilp_ms"] = _ms(t0)
    timings["total_ms"] = _ms(t_start)
    return report

