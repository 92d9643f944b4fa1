"""Greedy counterexample family and small synthetic test graphs."""
from __future__ import annotations

import numpy as np

from .graph import Graph


def gen_counterexample(r: int, k: int = 2) -> tuple[Graph, dict]:
    """Graph on which plain greedy is arbitrarily bad.

    ``k == 2``: a path of ``2r - 1`` vertices ``e1 .. c .. e2`` (ids 0 to
    ``2r - 2`` along the path) with ``r**2`` leaves on each endpoint.
    ``k > 2``: center ``c = 0`` with ``k`` flowers, each a path of ``r - 1``
    vertices ending in ``e_i`` which carries ``r**2`` leaves.
    """
    if r < 2 or k < 2:
        raise ValueError("need r >= 2 and k >= 2")
    edges = []
    if k == 2:
        plen = 2 * r - 1
        edges += [(i, i + 1) for i in range(plen - 1)]
        ends = [0, plen - 1]
        c = r - 1
        nxt = plen
    else:
        c = 0
        nxt = 1
        ends = []
        for _ in range(k):
            prev = c
            for _ in range(r - 1):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
            ends.append(prev)
    for e in ends:
        for _ in range(r * r):
            edges.append((e, nxt))
            nxt += 1
    g = Graph.from_edges(nxt, edges, name=f"counterexample_r{r}_k{k}")
    return g, {"r": r, "k": k, "c": c, "e": ends}


def gen_random_connected(n: int, p: float, seed: int, retries: int = 50) -> Graph:
    """G(n, p) conditioned on being connected.

    Resamples up to ``retries`` times, then overlays a random spanning tree
    on the last sample.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    for _ in range(retries):
        keep = rng.random(len(iu)) < p
        edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        if _connected(n, edges):
            return Graph.from_edges(n, edges, name=f"gnp_{n}_{p}_{seed}")
    perm = rng.permutation(n)
    for i in range(1, n):
        edges.append((int(perm[i]), int(perm[rng.integers(i)])))
    return Graph.from_edges(n, edges, name=f"gnp_{n}_{p}_{seed}")


def _connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps == 1


def gen_named(kind: str, *size: int) -> Graph:
    """``path(n)``, ``star(leaves)``, ``cycle(n)``, ``complete(n)``,
    ``grid(rows, cols)`` or ``spider(legs, length)`` (a subdivided star)."""
    if kind == "path":
        (n,) = size
        edges, nv = [(i, i + 1) for i in range(n - 1)], n
    elif kind == "star":
        (leaves,) = size
        edges, nv = [(0, i) for i in range(1, leaves + 1)], leaves + 1
    elif kind == "cycle":
        (n,) = size
        edges, nv = [(i, (i + 1) % n) for i in range(n)], n
    elif kind == "complete":
        (n,) = size
        edges, nv = [(i, j) for i in range(n) for j in range(i + 1, n)], n
    elif kind == "grid":
        rows, cols = size
        edges = []
        for i in range(rows):
            for j in range(cols):
                v = i * cols + j
                if j + 1 < cols:
                    edges.append((v, v + 1))
                if i + 1 < rows:
                    edges.append((v, v + cols))
        nv = rows * cols
    elif kind == "spider":
        legs, length = size
        edges, nv = [], 1
        for _ in range(legs):
            prev = 0
            for _ in range(length):
                edges.append((prev, nv))
                prev = nv
                nv += 1
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    return Graph.from_edges(nv, edges, name=f"{kind}_{'x'.join(map(str, size))}")
