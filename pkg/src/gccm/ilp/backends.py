"""Exact backends for distance-level models."""
from __future__ import annotations

import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..exact import MatrixCost, TruncatedCost, solve_truncated
from .lpfile import export_lp, import_solution
from .model import BergaminiModel, IlpModel


class BackendError(RuntimeError):
    pass


@dataclass
class BackendResult:
    objective: int | None
    assignment: dict = field(default_factory=dict)
    status: str = "optimal"

    def centers(self) -> list[int]:
        out = []
        for key, x in self.assignment.items():
            if not x or key[0] == "x":
                continue
            if key[0] == "y":
                out.append(key[1])
            elif key[1] == 0:
                out.append(key[0])
        return sorted(out)


def model_cost(model: IlpModel):
    """The model objective as a function of the chosen center set.

    Once the level-0 variables fix ``S``, every other vertex takes level
    ``min(dist(v, S), cap(v))``; the coefficient ``alpha(i + 1) + i`` is
    linear in the level with slope ``alpha + 1`` and offset ``alpha``.
    """
    offset = sum(model.alpha.get(v, 0) for v in model.vertices)
    if model.g is not None:
        n = model.g.n
        weight = np.zeros(n, dtype=np.int64)
        cap = np.zeros(n, dtype=np.int32)
        for v in model.vertices:
            weight[v] = model.alpha.get(v, 0) + 1
            cap[v] = model.level_cap[v]
        return TruncatedCost(model.g, weight, cap, offset)
    pos = {v: j for j, v in enumerate(model.vertices)}
    weight = [model.alpha.get(v, 0) + 1 for v in model.vertices]
    cap = np.array([model.level_cap[v] for v in model.vertices], dtype=np.int64)
    levels = {c: cap.copy() for c in model.centers}
    for c in model.centers:
        levels[c][pos[c]] = 0
    for (v, i), ws in model.distance_index.items():
        for w in ws:
            levels[w][pos[v]] = min(levels[w][pos[v]], i)
    return MatrixCost(levels, weight, cap, offset)


def builtin_backend_solve(model: IlpModel, time_limit: float | None = None, hint=None,
                          deadline: float | None = None) -> BackendResult:
    """Provably optimal assignment via branch-and-bound over center sets."""
    cost = model_cost(model)
    res = solve_truncated(cost, model.k, model.centers, time_limit, incumbent=hint, deadline=deadline)
    if res.status != "optimal":
        return BackendResult(None, {}, res.status)
    assignment = model.assignment_for(res.set)
    objective = model.objective(assignment)
    if objective != res.value:
        raise BackendError(f"objective mismatch: search {res.value}, assignment {objective}")
    return BackendResult(objective, assignment, "optimal")


def bergamini_solve(model: BergaminiModel, time_limit: float | None = None) -> BackendResult:
    """Optimal ``y``/``x`` assignment for the assignment model.

    Keys are ``("y", v)`` and ``("x", u, v)``.  The search runs over center
    sets with each row of the distance matrix as that center's level table.
    """
    n = model.g.n
    cap = np.full(n, n, dtype=np.int64)
    cost = MatrixCost({c: model.dist[c].astype(np.int64) for c in range(n)}, [1] * n, cap)
    res = solve_truncated(cost, model.k, range(n), time_limit)
    if res.status != "optimal":
        return BackendResult(None, {}, res.status)
    y, x = model.assignment_for(res.set)
    model.check(y, x)
    objective = model.objective(y, x)
    if objective != res.value:
        raise BackendError(f"objective mismatch: search {res.value}, assignment {objective}")
    assignment = {("y", v): val for v, val in y.items()}
    assignment.update({("x", u, v): val for (u, v), val in x.items()})
    return BackendResult(objective, assignment, "optimal")


class CommandBackend:
    """External MIP solver run as ``template.format(lp=..., sol=...)``.

    The command must write a ``name value`` solution listing to ``{sol}``.
    """

    def __init__(self, template: str):
        if "{lp}" not in template or "{sol}" not in template:
            raise ValueError("command template needs {lp} and {sol} placeholders")
        self.template = template

    def __call__(self, model: IlpModel, time_limit=None, hint=None, deadline=None) -> BackendResult:
        if deadline is not None:
            time_limit = max(deadline - time.monotonic(), 0.0)
        with tempfile.TemporaryDirectory(prefix="gccm_") as tmp:
            lp = Path(tmp) / "model.lp"
            sol = Path(tmp) / "model.sol"
            lp.write_text(export_lp(model))
            cmd = shlex.split(self.template.format(lp=shlex.quote(str(lp)), sol=shlex.quote(str(sol))))
            try:
                proc = subprocess.run(cmd, capture_output=True, text=True, timeout=time_limit)
            except subprocess.TimeoutExpired:
                return BackendResult(None, {}, "timeout")
            if proc.returncode != 0:
                raise BackendError(f"solver exited with {proc.returncode}: {proc.stderr.strip()[:500]}")
            if not sol.exists():
                raise BackendError("solver wrote no solution file")
            try:
                return import_solution(sol.read_text(), model)
            except ValueError as exc:
                raise BackendError(f"unusable solver output: {exc}") from exc


def make_backend(name: str):
    """``"builtin"`` or ``"cmd:<template>"``."""
    if name == "builtin":
        return builtin_backend_solve
    if name.startswith("cmd:"):
        return CommandBackend(name[4:])
    raise ValueError(f"unknown backend {name!r}")
