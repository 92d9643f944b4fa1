import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gccm import _pykernels, kernels

from oracles import connected_graphs, floyd_warshall

try:
    from gccm import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
BACKENDS = [pytest.param(_pykernels, id="python"),
            pytest.param(_ckernels, id="cython", marks=needs_ext)]


@pytest.mark.parametrize("K", BACKENDS)
@settings(max_examples=40, deadline=None)
@given(g=connected_graphs(), data=st.data())
def test_bfs_and_ecc_match_floyd_warshall(K, g, data):
    D = floyd_warshall(g)
    s = data.draw(st.integers(0, g.n - 1))
    assert K.bfs(g.indptr, g.indices, s).tolist() == D[s].tolist()
    assert K.eccentricities(g.indptr, g.indices).tolist() == D.max(axis=1).tolist()
    S = data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=4))
    assert K.multi_bfs(g.indptr, g.indices, S).tolist() == D[S].min(axis=0).tolist()


@pytest.mark.parametrize("K", BACKENDS)
@settings(max_examples=40, deadline=None)
@given(g=connected_graphs(), data=st.data())
def test_marginal_gain_and_add_center(K, g, data):
    D = floyd_warshall(g)
    S = data.draw(st.lists(st.integers(0, g.n - 1), min_size=0, max_size=3))
    c = data.draw(st.integers(0, g.n - 1))
    weight = np.asarray(data.draw(st.lists(st.integers(0, 4), min_size=g.n, max_size=g.n)), dtype=np.int64)
    cap = np.asarray(data.draw(st.lists(st.integers(0, g.n), min_size=g.n, max_size=g.n)), dtype=np.int32)
    if S:
        dist = D[S].min(axis=0).astype(np.int32)
    else:
        dist = np.full(g.n, kernels.INF, dtype=np.int32)
    before = (weight * np.minimum(dist, cap)).sum()
    after_dist = np.minimum(dist, D[c])
    after = (weight * np.minimum(after_dist, cap)).sum()
    assert K.marginal_gain(g.indptr, g.indices, dist, weight, cap, c) == before - after
    work = dist.copy()
    K.add_center(g.indptr, g.indices, work, c)
    assert work.tolist() == after_dist.tolist()


@pytest.mark.parametrize("K", BACKENDS)
@settings(max_examples=40, deadline=None)
@given(g=connected_graphs(min_n=3))
def test_closed_subset(K, g):
    nb = [set(g.neighbors(v).tolist()) | {v} for v in range(g.n)]
    for u, v in g.edges():
        assert K.closed_subset(g.indptr, g.indices, u, v)[0] == (nb[u] <= nb[v])
        assert K.closed_subset(g.indptr, g.indices, v, u)[0] == (nb[v] <= nb[u])


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.get_backend("python") is _pykernels
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_forced_fallback_end_to_end():
    import os
    import subprocess
    import sys
    code = ("import gccm\n"
            "g, _ = gccm.gen_counterexample(2, 2)\n"
            "print(gccm.KERNEL_BACKEND, gccm.solve_iteratively(g, 2).farness)")
    env = dict(os.environ, GCCM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "9"]
