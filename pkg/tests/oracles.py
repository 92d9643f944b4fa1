"""Independent oracles and graph sources shared by the tests."""
from itertools import combinations

import numpy as np
from hypothesis import strategies as st

from gccm import Graph, gen_random_connected


def floyd_warshall(g: Graph) -> np.ndarray:
    """All-pairs hop distances, independent of any BFS code."""
    n = g.n
    big = 10 * n
    d = np.full((n, n), big, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in g.edges():
        d[u, v] = d[v, u] = 1
    for w in range(n):
        d = np.minimum(d, d[:, [w]] + d[[w], :])
    return d


def farness_oracle(D: np.ndarray, S) -> int:
    return int(D[list(S)].min(axis=0).sum())


def min_farness_oracle(D: np.ndarray, k: int, candidates=None) -> int:
    cand = range(len(D)) if candidates is None else candidates
    return min(farness_oracle(D, S) for S in combinations(cand, k))


@st.composite
def connected_graphs(draw, min_n=2, max_n=14):
    n = draw(st.integers(min_n, max_n))
    p = draw(st.floats(0.05, 0.6))
    seed = draw(st.integers(0, 2**31 - 1))
    return gen_random_connected(n, p, seed)


def random_corpus(count, n_range=(8, 20), seed=0, ks=(2, 3)):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = float(rng.uniform(0.08, 0.35))
        k = int(rng.choice(ks))
        out.append((gen_random_connected(n, p, int(rng.integers(2**31))), k))
    return out
