"""Undirected simple-graph container with degree bookkeeping, plus the
plain-text dump format for graphs with node features."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class Graph:
    """Undirected simple graph over integer node indices 0..n-1.

    No self-loops, no parallel edges. Degrees are cached and kept in sync
    with edge insertions; sum(degrees) == 2 * num_edges at all times.
    """

    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self._degrees: list[int] = [0] * n
        self._num_edges = 0

    @classmethod
    def complete(cls, m: int) -> "Graph":
        g = cls(m)
        g.adj = [[v for v in range(m) if v != u] for u in range(m)]
        g._degrees = [m - 1] * m
        g._num_edges = m * (m - 1) // 2
        return g

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def num_edges(self) -> int:
        return self._num_edges

    def add_node(self) -> int:
        self.adj.append([])
        self._degrees.append(0)
        return self.n - 1

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if len(self.adj[u]) <= len(self.adj[v]) else (v, u)
        return b in self.adj[a]

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        if self.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) already present")
        self.adj[u].append(v)
        self.adj[v].append(u)
        self._degrees[u] += 1
        self._degrees[v] += 1
        self._num_edges += 1

    def connect_new_node(self, new: int, neighbors) -> None:
        """Attach a just-added, still-isolated node to distinct neighbours.

        Bulk path for the generator: simplicity holds by construction, so the
        per-edge duplicate scan is skipped after validating the inputs.
        """
        if self.adj[new]:
            raise ValueError(f"node {new} already has edges")
        nbrs = [int(x) for x in neighbors]
        if len(set(nbrs)) != len(nbrs):
            raise ValueError("duplicate neighbour")
        if any(nb == new or not 0 <= nb < self.n for nb in nbrs):
            raise ValueError("neighbour out of range")
        degs = self._degrees
        adj = self.adj
        for nb in nbrs:
            adj[nb].append(new)
            degs[nb] += 1
        adj[new].extend(nbrs)
        degs[new] += len(nbrs)
        self._num_edges += len(nbrs)

    def degree(self, u: int) -> int:
        return self._degrees[u]

    def degrees(self) -> np.ndarray:
        return np.asarray(self._degrees, dtype=np.int64)

    def neighbors(self, u: int) -> list[int]:
        return self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if v > u)


@dataclass
class DegreeHistogram:
    """Degree -> node count map with the cached total degree sum."""

    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total_degree(self) -> int:
        return sum(k * c for k, c in self.counts.items())

    @property
    def node_count(self) -> int:
        return sum(self.counts.values())


def degree_histogram(g: Graph) -> DegreeHistogram:
    counts: dict[int, int] = {}
    for k in g._degrees:
        counts[k] = counts.get(k, 0) + 1
    return DegreeHistogram(counts)


def dump_graph(g: Graph, features: np.ndarray, path) -> None:
    """Write `n m d` header, one `u v` line per edge, then n feature rows
    (d space-separated values, 17 significant digits, uniform space)."""
    features = np.asarray(features, dtype=float)
    if features.shape[0] != g.n:
        raise ValueError("feature row count must match node count")
    d = features.shape[1] if features.ndim == 2 else 0
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.num_edges} {d}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
        for row in features:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_graph(path) -> tuple[Graph, np.ndarray]:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("malformed header, expected 'n m d'")
        n, m, d = (int(x) for x in header)
        g = Graph(n)
        for _ in range(m):
            u, v = (int(x) for x in fh.readline().split())
            g.add_edge(u, v)
        features = np.empty((n, d))
        for i in range(n):
            row = [float(x) for x in fh.readline().split()]
            if len(row) != d:
                raise ValueError(f"feature row {i} has {len(row)} values, expected {d}")
            features[i] = row
    return g, features
