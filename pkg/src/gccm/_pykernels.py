"""Pure-Python versions of the graph kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or ``GCCM_PURE_PYTHON=1`` is set.
"""
from collections import deque

import numpy as np

INF = 1 << 30


def bfs(indptr, indices, source):
    n = len(indptr) - 1
    dist = [INF] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] == INF:
                dist[w] = dv
                queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def multi_bfs(indptr, indices, sources):
    n = len(indptr) - 1
    dist = [INF] * n
    queue = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] == INF:
                dist[w] = dv
                queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def eccentricities(indptr, indices):
    n = len(indptr) - 1
    ecc = np.zeros(n, dtype=np.int32)
    for s in range(n):
        ecc[s] = bfs(indptr, indices, s).max()
    return ecc


def marginal_gain(indptr, indices, dist, weight, cap, c):
    """Cost reduction from adding ``c`` to the centers behind ``dist``.

    Cost of a vertex is ``weight[v] * min(dist[v], cap[v])``.  The BFS from
    ``c`` stops at any vertex already at least as close to the current centers.
    """
    if dist[c] == 0:
        return 0
    seen = {c}
    frontier = [c]
    t = 0
    gain = 0
    while frontier:
        nxt = []
        for x in frontier:
            dx = dist[x]
            if t >= dx:
                continue
            cx = cap[x]
            gain += int(weight[x]) * ((dx if dx < cx else cx) - (t if t < cx else cx))
            for j in range(indptr[x], indptr[x + 1]):
                w = indices[j]
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
        t += 1
    return gain


def add_center(indptr, indices, dist, c):
    """Lower ``dist`` in place to account for a new center ``c``."""
    if dist[c] == 0:
        return
    dist[c] = 0
    frontier = [c]
    t = 1
    while frontier:
        nxt = []
        for x in frontier:
            for j in range(indptr[x], indptr[x + 1]):
                w = indices[j]
                if t < dist[w]:
                    dist[w] = t
                    nxt.append(w)
        frontier = nxt
        t += 1


def closed_subset(indptr, indices, v, u):
    """Return ``(N[v] <= N[u], steps)`` for adjacent ``v`` and ``u``.

    Sorted-merge scan over the two neighbor lists; ``steps`` counts merge
    comparisons for the work budget.
    """
    i, iend = indptr[v], indptr[v + 1]
    j, jend = indptr[u], indptr[u + 1]
    steps = 0
    while i < iend:
        a = indices[i]
        if a == u:
            i += 1
            continue
        while j < jend and indices[j] < a:
            j += 1
            steps += 1
        steps += 1
        if j == jend or indices[j] != a:
            return False, steps
        i += 1
        j += 1
    return True, steps
