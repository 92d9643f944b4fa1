# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels. Mirrors ``gccm._pykernels`` exactly."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

INF = 1 << 30
cdef int C_INF = 1 << 30


cdef void _bfs_into(const int[::1] indptr, const int[::1] indices,
                    int[::1] dist, int* queue, int head, int tail) noexcept nogil:
    cdef int v, w, j, dv
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] == C_INF:
                dist[w] = dv
                queue[tail] = w
                tail += 1


def bfs(const int[::1] indptr, const int[::1] indices, int source):
    cdef int n = indptr.shape[0] - 1
    out = np.full(n, C_INF, dtype=np.int32)
    cdef int[::1] dist = out
    cdef int* queue = <int*> malloc(n * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    dist[source] = 0
    queue[0] = source
    with nogil:
        _bfs_into(indptr, indices, dist, queue, 0, 1)
    free(queue)
    return out


def multi_bfs(const int[::1] indptr, const int[::1] indices, sources):
    cdef int n = indptr.shape[0] - 1
    out = np.full(n, C_INF, dtype=np.int32)
    cdef int[::1] dist = out
    cdef int* queue = <int*> malloc(n * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    cdef int tail = 0
    cdef int s
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    with nogil:
        _bfs_into(indptr, indices, dist, queue, 0, tail)
    free(queue)
    return out


def eccentricities(const int[::1] indptr, const int[::1] indices):
    cdef int n = indptr.shape[0] - 1
    ecc_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] ecc = ecc_arr
    scratch = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = scratch
    cdef int* queue = <int*> malloc(n * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    cdef int s, i, best
    with nogil:
        for s in range(n):
            for i in range(n):
                dist[i] = C_INF
            dist[s] = 0
            queue[0] = s
            _bfs_into(indptr, indices, dist, queue, 0, 1)
            best = 0
            for i in range(n):
                if dist[i] > best:
                    best = dist[i]
            ecc[s] = best
    free(queue)
    return ecc_arr


def marginal_gain(const int[::1] indptr, const int[::1] indices,
                  const int[::1] dist, const long long[::1] weight,
                  const int[::1] cap, int c):
    cdef int n = indptr.shape[0] - 1
    if dist[c] == 0:
        return 0
    cdef char* seen = <char*> malloc(n * sizeof(char))
    cdef int* queue = <int*> malloc(n * sizeof(int))
    cdef int* level = <int*> malloc(n * sizeof(int))
    if seen == NULL or queue == NULL or level == NULL:
        free(seen); free(queue); free(level)
        raise MemoryError()
    cdef int i, x, w, j, t, dx, cx, a, b
    cdef int head = 0, tail = 1
    cdef long long gain = 0
    with nogil:
        for i in range(n):
            seen[i] = 0
        seen[c] = 1
        queue[0] = c
        level[c] = 0
        while head < tail:
            x = queue[head]
            head += 1
            t = level[x]
            dx = dist[x]
            if t >= dx:
                continue
            cx = cap[x]
            a = dx if dx < cx else cx
            b = t if t < cx else cx
            gain += weight[x] * (a - b)
            for j in range(indptr[x], indptr[x + 1]):
                w = indices[j]
                if not seen[w]:
                    seen[w] = 1
                    level[w] = t + 1
                    queue[tail] = w
                    tail += 1
    free(seen); free(queue); free(level)
    return gain


def add_center(const int[::1] indptr, const int[::1] indices, int[::1] dist, int c):
    cdef int n = indptr.shape[0] - 1
    if dist[c] == 0:
        return
    cdef int* queue = <int*> malloc(n * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    cdef int head = 0, tail = 1, x, w, j, t
    dist[c] = 0
    queue[0] = c
    with nogil:
        while head < tail:
            x = queue[head]
            head += 1
            t = dist[x] + 1
            for j in range(indptr[x], indptr[x + 1]):
                w = indices[j]
                if t < dist[w]:
                    dist[w] = t
                    queue[tail] = w
                    tail += 1
    free(queue)


def closed_subset(const int[::1] indptr, const int[::1] indices, int v, int u):
    cdef int i = indptr[v], iend = indptr[v + 1]
    cdef int j = indptr[u], jend = indptr[u + 1]
    cdef long steps = 0
    cdef int a
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
