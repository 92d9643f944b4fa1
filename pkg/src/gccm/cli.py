"""Command line: ``gccm {solve,approx,reduce,bench,gen}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import _pykernels
from .exact import brute_force, branch_and_bound
from .generators import gen_counterexample, gen_named, gen_random_connected
from .graph import Graph, GraphError, eccentricities, read_graph, to_edgelist
from .heuristics import approx_pipeline, greedy, local_search_swap
from .ilp import DEFAULT_TIME_LIMIT, BackendError, SolveReport, make_backend, solve_iteratively
from .reductions import reduce_graph

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_TIMEOUT, EXIT_INTERNAL = 0, 1, 2, 3
CSV_HEADER = ["graph", "k", "mode", "repeat", "status", "farness", "iterations", "total_ms"]
GRAPH_SUFFIXES = {".txt", ".edges", ".el", ".edgelist", ".graph", ".metis", ".mtx"}


class UsageError(ValueError):
    pass


class IntegrityError(RuntimeError):
    pass


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def recheck_farness(g: Graph, S) -> int:
    """Farness from per-source BFS rows, bypassing the multi-source kernel."""
    rows = np.stack([_pykernels.bfs(g.indptr, g.indices, int(s)) for s in S])
    return int(rows.min(axis=0).sum())


def _check_k(g: Graph, k: int):
    if not 1 <= k <= g.n:
        raise UsageError(f"--k must lie in [1, {g.n}], got {k}")


def run_solve(g: Graph, k: int, mode: str, backend: str = "builtin",
              time_limit: float | None = DEFAULT_TIME_LIMIT) -> SolveReport:
    _check_k(g, k)
    if mode in ("grover", "ilpind"):
        report = solve_iteratively(g, k, mode, make_backend(backend), time_limit)
    elif mode in ("bb", "brute"):
        t0 = time.perf_counter()
        report = SolveReport(g.name, g.n, g.m, k, mode, "optimal")
        red = reduce_graph(g, k)
        report.reduction_stats = {"dominated": len(red.dominated), "absorbed": len(red.absorbed)}
        if mode == "bb":
            res = branch_and_bound(g, k, red.centers(g.n), time_limit)
            if res.status == "optimal":
                report.finish(g, res.set)
            else:
                report.status = "timeout"
        else:
            S, _ = brute_force(g, k)
            report.finish(g, S)
        ms = round((time.perf_counter() - t0) * 1000.0, 3)
        report.timings = {"reduction_ms": 0.0, "heuristic_ms": 0.0, "ilp_ms": 0.0, "total_ms": ms}
    else:
        raise UsageError(f"unknown mode {mode!r}")
    if report.solution is not None and recheck_farness(g, report.solution) != report.farness:
        raise IntegrityError("reported farness disagrees with recomputation")
    return report


def run_approx(g: Graph, k: int, algo: str, use_dominated: bool = True, seed: int = 0) -> SolveReport:
    _check_k(g, k)
    t0 = time.perf_counter()
    red = reduce_graph(g, k)
    space = red.centers(g.n) if use_dominated else list(range(g.n))
    if algo == "greedy":
        sol = greedy(g, k)
    elif algo == "ls":
        rng = np.random.default_rng(seed)
        start = sorted(int(v) for v in rng.choice(space, size=k, replace=False))
        sol = local_search_swap(g, k, start, space)
    elif algo == "greedy-ls":
        sol = approx_pipeline(g, k, red, use_dominated=use_dominated)
    else:
        raise UsageError(f"unknown algorithm {algo!r}")
    report = SolveReport(g.name, g.n, g.m, k, algo, "approx")
    report.reduction_stats = {"dominated": len(red.dominated), "absorbed": len(red.absorbed)}
    report.finish(g, sol.set)
    report.timings = {"reduction_ms": 0.0, "heuristic_ms": 0.0, "ilp_ms": 0.0,
                      "total_ms": round((time.perf_counter() - t0) * 1000.0, 3)}
    if recheck_farness(g, report.solution) != report.farness:
        raise IntegrityError("reported farness disagrees with recomputation")
    return report


def reduce_stats(g: Graph, k: int) -> dict:
    _check_k(g, k)
    red = reduce_graph(g, k)
    _, diam = eccentricities(g)
    dens = 2 * g.m / (g.n * (g.n - 1)) if g.n > 1 else 0.0
    return {"schema_version": SCHEMA_VERSION, "graph": g.name, "n": g.n, "m": g.m, "k": k,
            "dens": dens, "diam": diam, "dom": len(red.dominated), "abs": len(red.absorbed)}


def _report_json(report: SolveReport) -> str:
    d = report.to_dict()
    d["schema_version"] = SCHEMA_VERSION
    return json.dumps(d, indent=2)


def _load(args) -> Graph:
    try:
        return read_graph(args.graph, args.format)
    except OSError as exc:
        raise UsageError(f"cannot read graph: {exc}") from exc


def cmd_solve(args) -> int:
    g = _load(args)
    report = run_solve(g, args.k, args.mode, args.backend, args.time_limit)
    print(_report_json(report))
    return EXIT_OK if report.status == "optimal" else EXIT_TIMEOUT


def cmd_approx(args) -> int:
    g = _load(args)
    print(_report_json(run_approx(g, args.k, args.algo, args.use_dominated, args.seed)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _load(args)
    print(json.dumps(reduce_stats(g, args.k), indent=2))
    return EXIT_OK


def _bench_task(task):
    path, fmt, k, mode, repeat, time_limit, backend = task
    g = read_graph(path, fmt)
    row = {"graph": g.name, "k": k, "mode": mode, "repeat": repeat}
    try:
        if mode in ("grover", "ilpind", "bb", "brute"):
            rep = run_solve(g, k, mode, backend, time_limit)
        else:
            rep = run_approx(g, k, mode)
    except (ValueError, GraphError) as exc:
        row.update(status="error", farness="", iterations="", total_ms="")
        print(f"{g.name} k={k} {mode}: {exc}", file=sys.stderr)
        return row
    row.update(status=rep.status,
               farness="" if rep.status == "timeout" else rep.farness,
               iterations=rep.iterations,
               total_ms=rep.timings.get("total_ms", ""))
    return row


def bench_rows(graphs, fmt, k_min, k_max, modes, time_limit, repeats, backend="builtin", jobs=1):
    tasks = [(str(p), fmt, k, mode, rep, time_limit, backend)
             for p in graphs for k in range(k_min, k_max + 1) for mode in modes
             for rep in range(repeats)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_bench_task, tasks))
    return [_bench_task(t) for t in tasks]


def cmd_bench(args) -> int:
    src = Path(args.graphs)
    graphs = sorted(p for p in src.iterdir() if p.suffix in GRAPH_SUFFIXES) if src.is_dir() else [src]
    if not graphs:
        raise UsageError(f"no graph files in {src}")
    modes = [m for m in args.modes.split(",") if m]
    rows = bench_rows(graphs, args.format, args.k_min, args.k_max, modes, args.time_limit,
                      args.repeats, args.backend, args.jobs)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if args.out == "-":
        sys.stdout.write(buf.getvalue())
    else:
        Path(args.out).write_text(buf.getvalue())
    return EXIT_OK


def cmd_gen(args) -> int:
    meta = {"kind": args.kind, "seed": args.seed}
    if args.kind == "counterexample":
        g, landmarks = gen_counterexample(args.r, args.k)
        meta.update(landmarks)
    elif args.kind == "gnp":
        g = gen_random_connected(args.n, args.p, args.seed)
        meta.update(n=args.n, p=args.p)
    elif args.kind in ("path", "cycle", "complete"):
        g = gen_named(args.kind, args.n)
        meta.update(n=args.n)
    elif args.kind == "star":
        g = gen_named("star", args.n)
        meta.update(leaves=args.n)
    elif args.kind == "grid":
        g = gen_named("grid", args.rows, args.cols)
        meta.update(rows=args.rows, cols=args.cols)
    elif args.kind == "spider":
        g = gen_named("spider", args.legs, args.length)
        meta.update(legs=args.legs, length=args.length)
    else:
        raise UsageError(f"unknown kind {args.kind!r}")
    meta.update(n_vertices=g.n, m_edges=g.m)
    out = Path(args.out)
    out.write_text(to_edgelist(g))
    out.with_suffix(out.suffix + ".json").write_text(json.dumps(meta, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gccm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("--graph", required=True)
        sp.add_argument("--format", choices=["edgelist", "metis"], default="edgelist")

    s = sub.add_parser("solve", help="exact solve of one instance")
    graph_args(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", choices=["grover", "ilpind", "bb", "brute"], default="grover")
    s.add_argument("--backend", default="builtin", help='"builtin" or "cmd:<template with {lp} {sol}>"')
    s.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("approx", help="heuristic solution")
    graph_args(a)
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--algo", choices=["greedy", "ls", "greedy-ls"], default="greedy-ls")
    a.add_argument("--use-dominated", type=_bool, default=True)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_approx)

    r = sub.add_parser("reduce", help="dominated/absorbed vertex statistics")
    graph_args(r)
    r.add_argument("--k", type=int, default=1)
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="k-sweep over a directory of graphs, CSV output")
    b.add_argument("--graphs", required=True)
    b.add_argument("--format", choices=["edgelist", "metis"], default="edgelist")
    b.add_argument("--k-min", type=int, default=2)
    b.add_argument("--k-max", type=int, default=20)
    b.add_argument("--modes", default="grover,ilpind")
    b.add_argument("--backend", default="builtin")
    b.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)

    gsp = sub.add_parser("gen", help="write a generated graph as an edge list")
    gsp.add_argument("--kind", required=True,
                     choices=["counterexample", "gnp", "path", "star", "cycle", "complete", "grid", "spider"])
    gsp.add_argument("--r", type=int, default=2)
    gsp.add_argument("--k", type=int, default=2)
    gsp.add_argument("--n", type=int, default=10)
    gsp.add_argument("--p", type=float, default=0.2)
    gsp.add_argument("--rows", type=int, default=3)
    gsp.add_argument("--cols", type=int, default=3)
    gsp.add_argument("--legs", type=int, default=3)
    gsp.add_argument("--length", type=int, default=3)
    gsp.add_argument("--seed", type=int, default=0)
    gsp.add_argument("--out", required=True)
    gsp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except IntegrityError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, GraphError, ValueError, BackendError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
