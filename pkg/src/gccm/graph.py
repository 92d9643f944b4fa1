"""Immutable CSR graph plus the distance and farness kernels built on it."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class GraphError(ValueError):
    """Malformed or unsupported graph input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected, simple, connected graph in compressed adjacency form.

    ``indices[indptr[v]:indptr[v+1]]`` are the neighbors of ``v`` in ascending
    order.  ``labels[v]`` is the vertex name from the input file.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple = field(default=())
    name: str = ""

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def edges(self):
        """Yield each undirected edge once as ``(u, v)`` with ``u < v``."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence = (),
                   name: str = "", check_connected: bool = True) -> "Graph":
        """Build from ``n`` and an edge iterable; drops self-loops and duplicates."""
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        indptr = np.zeros(n + 1, dtype=np.int32)
        for v in range(n):
            indptr[v + 1] = indptr[v] + len(adj[v])
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        for v in range(n):
            indices[indptr[v]:indptr[v + 1]] = sorted(adj[v])
        g = cls(indptr, indices, tuple(labels), name)
        if check_connected:
            _require_connected(g)
        return g


def _require_connected(g: Graph) -> None:
    if g.n == 0:
        raise GraphError("graph is empty")
    dist = kernels.bfs(g.indptr, g.indices, 0)
    far = np.flatnonzero(dist >= kernels.INF)
    if len(far):
        raise GraphError(
            f"graph is disconnected: vertices {g.labels[0]!r} and "
            f"{g.labels[int(far[0])]!r} lie in different components")


def _label(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def load_graph(text: str, format: str = "edgelist", name: str = "") -> Graph:
    """Parse an edge list or METIS file into a :class:`Graph`.

    Edge lists hold one ``u v`` pair per line; ``%`` and ``#`` lines are
    comments.  Vertex ids are renumbered in order of first appearance.
    """
    if format == "edgelist":
        ids: dict = {}
        labels = []
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line[0] in "%#":
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
            pair = []
            for tok in parts[:2]:
                if tok not in ids:
                    ids[tok] = len(labels)
                    labels.append(_label(tok))
                pair.append(ids[tok])
            edges.append(tuple(pair))
        if not labels:
            raise GraphError("empty input")
        return Graph.from_edges(len(labels), edges, labels, name)
    if format == "metis":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if not ln.startswith("%")]
        while lines and not lines[0]:
            lines.pop(0)
        if not lines:
            raise GraphError("empty input")
        header = lines[0].split()
        n = int(header[0])
        if n == 0:
            raise GraphError("empty input")
        body = lines[1:1 + n]
        if len(body) < n:
            body += [""] * (n - len(body))
        edges = []
        for v, line in enumerate(body):
            for tok in line.split():
                u = int(tok) - 1
                edges.append((v, u))
        return Graph.from_edges(n, edges, tuple(range(1, n + 1)), name)
    raise GraphError(f"unknown graph format {format!r}")


def read_graph(path, format: str = "edgelist") -> Graph:
    from pathlib import Path

    p = Path(path)
    return load_graph(p.read_text(), format, name=p.stem)


def to_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def _as_sources(g: Graph, S) -> list[int]:
    S = sorted({int(s) for s in S})
    if not S:
        raise ValueError("vertex set must be non-empty")
    if S[0] < 0 or S[-1] >= g.n:
        raise ValueError(f"vertex id out of range [0, {g.n})")
    return S


def bfs(g: Graph, source: int) -> np.ndarray:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    return kernels.bfs(g.indptr, g.indices, int(source))


def dist_to_set(g: Graph, S) -> np.ndarray:
    return kernels.multi_bfs(g.indptr, g.indices, _as_sources(g, S))


def group_farness(g: Graph, S) -> int:
    return int(dist_to_set(g, S).sum(dtype=np.int64))


def group_closeness(g: Graph, S) -> Fraction:
    """``(n - |S|) / f(S)`` as an exact fraction."""
    S = _as_sources(g, S)
    f = group_farness(g, S)
    if f == 0:
        raise ValueError("closeness undefined: group farness is zero")
    return Fraction(g.n - len(S), f)


def eccentricities(g: Graph) -> tuple[np.ndarray, int]:
    """Per-vertex eccentricity and the diameter, via one BFS per vertex."""
    ecc = kernels.eccentricities(g.indptr, g.indices)
    return ecc, int(ecc.max())
