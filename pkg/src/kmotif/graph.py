"""Immutable simple undirected graphs over dense integer vertex ids.

Vertices are always ``0..n-1``; external (string) labels live in a
:class:`VertexMap` kept next to the graph. Adjacency is stored in CSR form
with sorted neighbour lists so the structure can be shared read-only by any
number of workers.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

log = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Raised for malformed edge-list input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph in CSR layout.

    Use :meth:`from_edges` rather than the constructor; it enforces
    simplicity and symmetry.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        weights: Sequence[float] | np.ndarray | None = None,
    ) -> "Graph":
        """Build a graph on ``n`` vertices.

        Self-loops are dropped and repeated pairs collapse into one edge whose
        weight is the sum of the repeats.
        """
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        if weights is None:
            w = np.ones(len(e), dtype=float)
        else:
            w = np.asarray(weights, dtype=float).reshape(-1)
            if len(w) != len(e):
                raise ValueError("weights and edges differ in length")
            if np.any(w < 0):
                raise ValueError("edge weights must be nonnegative")
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        keep = e[:, 0] != e[:, 1]
        e, w = e[keep], w[keep]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        vals = np.concatenate([w, w])
        mat = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
        mat.sum_duplicates()
        mat.sort_indices()
        return cls(
            mat.indptr.astype(np.int64),
            mat.indices.astype(np.int64),
            mat.data.astype(float),
        )

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls.from_edges(n, np.zeros((0, 2), dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def neighbor_weights(self, v: int) -> np.ndarray:
        return self.weights[self.indptr[v] : self.indptr[v + 1]]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @cached_property
    def adj_sets(self) -> list[frozenset[int]]:
        """Per-vertex neighbour sets, for set-heavy pure-Python loops."""
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [frozenset(ind[ptr[v] : ptr[v + 1]]) for v in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def weight(self, u: int, v: int) -> float:
        nb = self.neighbors(u)
        i = int(np.searchsorted(nb, v))
        if i < len(nb) and nb[i] == v:
            return float(self.neighbor_weights(u)[i])
        raise KeyError((u, v))

    def edges(self) -> np.ndarray:
        """Edge array of shape ``(m, 2)`` with ``u < v``, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        mask = rows < self.indices
        return np.column_stack([rows[mask], self.indices[mask]])

    def edge_weights(self) -> np.ndarray:
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        return self.weights[rows < self.indices]

    def to_sparse(self, weighted: bool = True) -> sparse.csr_matrix:
        data = self.weights if weighted else np.ones_like(self.weights)
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def without_edges(self, drop: np.ndarray) -> "Graph":
        """Copy of the graph with the ``(u, v)`` pairs in ``drop`` removed."""
        drop = np.asarray(drop, dtype=np.int64).reshape(-1, 2)
        if not len(drop):
            return self
        e = self.edges()
        w = self.edge_weights()
        key = e[:, 0] * self.n + e[:, 1]
        dk = np.minimum(drop[:, 0], drop[:, 1]) * self.n + np.maximum(drop[:, 0], drop[:, 1])
        keep = ~np.isin(key, dk)
        return Graph.from_edges(self.n, e[keep], w[keep])


@dataclass
class VertexMap:
    """Bijection between external string ids and dense indices."""

    labels: list[str] = field(default_factory=list)
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    @classmethod
    def identity(cls, n: int) -> "VertexMap":
        vm = cls()
        for i in range(n):
            vm.add(str(i))
        return vm

    def add(self, label: str) -> int:
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.labels)
            self._index[label] = idx
            self.labels.append(label)
        return idx

    def index(self, label: str) -> int:
        return self._index[label]

    def label(self, idx: int) -> str:
        return self.labels[idx]

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self._index


class LoadedGraph(NamedTuple):
    graph: Graph
    vertices: VertexMap
    self_loops: int


def parse_edge_lines(lines: Iterable[str], weighted: bool = False, source: str = "<input>") -> LoadedGraph:
    vm = VertexMap()
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    loops = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(f"{source}:{lineno}: expected 'u v [w]', got {raw.rstrip()!r}")
        w = 1.0
        if len(parts) == 3 and weighted:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListError(f"{source}:{lineno}: bad weight {parts[2]!r}") from None
            if not np.isfinite(w) or w < 0:
                raise EdgeListError(f"{source}:{lineno}: negative or non-finite weight {parts[2]!r}")
        a, b = vm.add(parts[0]), vm.add(parts[1])
        if a == b:
            loops += 1
            continue
        us.append(a)
        vs.append(b)
        ws.append(w)
    if loops:
        log.info("%s: dropped %d self-loop line(s)", source, loops)
    g = Graph.from_edges(len(vm), np.column_stack([us, vs]) if us else np.zeros((0, 2), np.int64), ws)
    return LoadedGraph(g, vm, loops)


def load_edge_list(path: str | os.PathLike, weighted: bool = False) -> LoadedGraph:
    """Read a whitespace-separated ``u v [w]`` edge list.

    Duplicate pairs are merged by summing their weights (1.0 each when
    ``weighted`` is false), self-loops are dropped and counted.
    """
    with open(path, encoding="utf-8") as fh:
        return parse_edge_lines(fh, weighted=weighted, source=str(path))


def write_edge_list(
    g: Graph,
    path: str | os.PathLike,
    vertices: VertexMap | None = None,
    header: str | None = None,
    weighted: bool = False,
) -> None:
    vm = vertices or VertexMap.identity(g.n)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for (u, v), w in zip(g.edges().tolist(), g.edge_weights().tolist()):
            if weighted:
                fh.write(f"{vm.label(u)}\t{vm.label(v)}\t{w:g}\n")
            else:
                fh.write(f"{vm.label(u)}\t{vm.label(v)}\n")


def induced_subgraph(g: Graph, members: Iterable[int] | np.ndarray) -> tuple[Graph, np.ndarray]:
    """Subgraph induced by ``members``, relabelled densely.

    Returns the subgraph and the sorted array of original indices, so that
    local vertex ``i`` is original vertex ``orig[i]``.
    """
    orig = np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray) else members, dtype=np.int64))
    if len(orig) and (orig[0] < 0 or orig[-1] >= g.n):
        raise ValueError("member not in graph")
    local = np.full(g.n, -1, dtype=np.int64)
    local[orig] = np.arange(len(orig))
    e = g.edges()
    w = g.edge_weights()
    keep = (local[e[:, 0]] >= 0) & (local[e[:, 1]] >= 0)
    sub = Graph.from_edges(len(orig), local[e[keep]], w[keep])
    return sub, orig


def connected_components(g: Graph) -> list[np.ndarray]:
    """Vertex sets of the connected components, each sorted, ordered by smallest member."""
    if g.n == 0:
        return []
    _, labels = csgraph.connected_components(g.to_sparse(), directed=False)
    return group_labels(labels)


def group_labels(labels: np.ndarray) -> list[np.ndarray]:
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    groups = np.split(order, bounds)
    groups.sort(key=lambda a: int(a[0]))
    return groups
