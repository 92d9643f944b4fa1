"""Compare the compiled and pure-Python kernel backends.

Kernel calls are timed in-process through ``gccm.kernels.get_backend``.
The end-to-end rows (greedy, branch-and-bound, grover solve) run in a
subprocess per backend since the choice is fixed at import.

    python benchmarks/bench_kernels.py [--quick]
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from gccm import gen_named, gen_random_connected
from gccm.kernels import get_backend

END_TO_END = r"""
import json, time
from gccm import branch_and_bound, gen_named, gen_random_connected, greedy, solve_iteratively
from gccm.kernels import BACKEND
g = gen_random_connected({n}, {p}, 1)
grid = gen_named("grid", {side}, {side})
out = {{"backend": BACKEND}}
for name, fn in [("greedy k=10", lambda: greedy(g, 10)),
                 ("bb k=3 grid", lambda: branch_and_bound(grid, 3)),
                 ("grover k=4 grid", lambda: solve_iteratively(grid, 4, "grover"))]:
    t0 = time.perf_counter(); fn(); out[name] = time.perf_counter() - t0
print(json.dumps(out))
"""


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(g, repeat):
    rows = []
    ip, ix = g.indptr, g.indices
    dist0 = np.asarray(get_backend("python").bfs(ip, ix, 0), dtype=np.int32)
    weight = np.ones(g.n, dtype=np.int64)
    cap = np.full(g.n, g.n, dtype=np.int32)
    cases = {
        "bfs": lambda k: k.bfs(ip, ix, 0),
        "multi_bfs(8)": lambda k: k.multi_bfs(ip, ix, np.arange(8, dtype=np.int32)),
        "marginal_gain": lambda k: k.marginal_gain(ip, ix, dist0, weight, cap, g.n // 2),
        "closed_subset": lambda k: k.closed_subset(ip, ix, 0, int(ix[ip[0]])),
    }
    for name, call in cases.items():
        t = {b: best_of(lambda: call(get_backend(b)), repeat) for b in ("python", "cython")}
        rows.append((name, t["python"], t["cython"]))
    return rows


def end_to_end(n, p, side):
    res = {}
    for backend, flag in (("python", "1"), ("cython", "0")):
        env = dict(os.environ, GCCM_PURE_PYTHON=flag)
        code = END_TO_END.format(n=n, p=p, side=side)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        res[backend] = json.loads(out.stdout)
    if res["cython"]["backend"] != "cython":
        raise SystemExit("compiled extension not available; build it with pip install -e .")
    return [(name, res["python"][name], res["cython"][name])
            for name in res["python"] if name != "backend"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    n, side, repeat = (400, 7, 3) if args.quick else (3000, 10, 5)
    try:
        get_backend("cython")
    except ImportError:
        raise SystemExit("compiled extension not available; build it with pip install -e .")
    g = gen_random_connected(n, 6.0 / n, 7)
    rows = kernel_rows(g, repeat)
    grid = gen_named("grid", side * 3, side * 3)
    ecc = [best_of(lambda b=b: get_backend(b).eccentricities(grid.indptr, grid.indices), 1)
           for b in ("python", "cython")]
    rows.append(("eccentricities", *ecc))
    rows += end_to_end(n // 4, 8.0 / n, side)
    print(f"{'case':<20}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, tp, tc in rows:
        print(f"{name:<20}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
