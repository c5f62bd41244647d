"""Motif catalog, induced-instance enumeration, co-occurrence matrices, motif conductance.

Instances use induced-subgraph semantics: a vertex set is an instance of a
pattern only when the subgraph it induces is isomorphic to the pattern. So
a 4-clique contains four triangles but no diamond, no paw and no 4-cycle.

Enumeration costs, with ``d`` the maximum degree and ``T`` the triangle count:
triangles ``O(m d)``; K4 and paw ``O(T d)``; diamond ``O(m d^2)``;
4-cycle ``O(n d^3)`` worst case; star ``O(n d^3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np
from scipy import sparse

from .graph import Graph


@dataclass(frozen=True)
class MotifSpec:
    id: str
    size: int
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def pattern(self) -> Graph:
        return Graph.from_edges(self.size, self.edges)

    @property
    def min_degree(self) -> int:
        return int(self.pattern.degrees.min())


CATALOG: dict[str, MotifSpec] = {
    spec.id: spec
    for spec in (
        MotifSpec("M32", 3, ((0, 1), (1, 2), (0, 2))),
        MotifSpec("M42", 4, ((0, 1), (0, 2), (0, 3))),
        MotifSpec("M43", 4, ((0, 1), (1, 2), (2, 3), (0, 3))),
        MotifSpec("M44", 4, ((0, 1), (1, 2), (0, 2), (2, 3))),
        MotifSpec("M45", 4, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3))),
        MotifSpec("M46", 4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    )
}


def get_motif(motif: str | MotifSpec) -> MotifSpec:
    if isinstance(motif, MotifSpec):
        return motif
    try:
        return CATALOG[motif.upper()]
    except KeyError:
        raise ValueError(f"unknown motif {motif!r}; choose from {', '.join(CATALOG)}") from None


def _upper(adj: list[frozenset[int]]) -> list[set[int]]:
    return [{v for v in nb if v > u} for u, nb in enumerate(adj)]


def _triangles(adj: list[frozenset[int]]):
    up = _upper(adj)
    for u, uu in enumerate(up):
        for v in uu:
            for w in uu & up[v]:
                if w > v:
                    yield u, v, w


def _cliques4(adj):
    up = _upper(adj)
    for u, v, w in _triangles(adj):
        for x in up[u] & up[v] & up[w]:
            if x > w:
                yield u, v, w, x


def _paws(adj):
    for tri in _triangles(adj):
        a, b, c = tri
        for t, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
            n1, n2 = adj[o1], adj[o2]
            for x in adj[t]:
                if x != o1 and x != o2 and x not in n1 and x not in n2:
                    yield a, b, c, x


def _diamonds(adj):
    for u, nb in enumerate(adj):
        for v in nb:
            if v <= u:
                continue
            common = sorted(nb & adj[v])
            for a, b in combinations(common, 2):
                if b not in adj[a]:
                    yield u, v, a, b


def _cycles4(adj):
    for a, nb in enumerate(adj):
        higher = sorted(v for v in nb if v > a)
        for b, d in combinations(higher, 2):
            if d in adj[b]:
                continue
            for c in adj[b] & adj[d]:
                if c > a and c not in nb:
                    yield a, b, c, d


def _stars(adj):
    for c, nb in enumerate(adj):
        if len(nb) < 3:
            continue
        for x, y, z in combinations(sorted(nb), 3):
            if y not in adj[x] and z not in adj[x] and z not in adj[y]:
                yield c, x, y, z


_ENUMERATORS = {
    "M32": _triangles,
    "M42": _stars,
    "M43": _cycles4,
    "M44": _paws,
    "M45": _diamonds,
    "M46": _cliques4,
}


def enumerate_motifs(g: Graph, spec: MotifSpec | str) -> np.ndarray:
    """Every induced instance of ``spec`` in ``g``.

    Returns an ``(count, size)`` integer array whose rows are sorted vertex
    tuples, in lexicographic order, each instance once. Edge weights are
    ignored.
    """
    spec = get_motif(spec)
    rows = list(_ENUMERATORS[spec.id](g.adj_sets))
    if not rows:
        return np.zeros((0, spec.size), dtype=np.int64)
    inst = np.sort(np.asarray(rows, dtype=np.int64), axis=1)
    return inst[np.lexsort(inst.T[::-1])]


def instance_degree(instances: np.ndarray, n: int) -> np.ndarray:
    """Number of instances each vertex belongs to."""
    return np.bincount(instances.ravel(), minlength=n)


@dataclass(frozen=True)
class MotifAdjacency:
    """Co-occurrence matrix ``W`` (pairs sharing an instance) with its row sums."""

    W: sparse.csr_matrix
    degree: np.ndarray
    instances: np.ndarray
    size: int

    @property
    def n(self) -> int:
        return self.W.shape[0]


def adjacency_from_instances(instances: np.ndarray, n: int, size: int) -> MotifAdjacency:
    pairs = list(combinations(range(size), 2))
    if len(instances):
        r = np.concatenate([instances[:, i] for i, _ in pairs])
        c = np.concatenate([instances[:, j] for _, j in pairs])
        rows, cols = np.concatenate([r, c]), np.concatenate([c, r])
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
    W = sparse.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))
    W.sum_duplicates()
    degree = np.asarray(W.sum(axis=1)).ravel()
    return MotifAdjacency(W, degree, instances, size)


def motif_adjacency(g: Graph, spec: MotifSpec | str) -> MotifAdjacency:
    spec = get_motif(spec)
    return adjacency_from_instances(enumerate_motifs(g, spec), g.n, spec.size)


def conductance_from_instances(instances: np.ndarray, in_s: np.ndarray) -> float | None:
    """Motif conductance of the vertex mask ``in_s``; ``None`` when a side has zero volume.

    An instance is cut when it has vertices on both sides; the volume of a
    side is the total number of instance vertices lying in it.
    """
    if not len(instances):
        return None
    inside = in_s[instances].sum(axis=1)
    size = instances.shape[1]
    cut = int(np.count_nonzero((inside > 0) & (inside < size)))
    vol_s = int(inside.sum())
    vol_c = instances.size - vol_s
    low = min(vol_s, vol_c)
    if low == 0:
        return None
    return cut / low


def motif_conductance(g: Graph, spec: MotifSpec | str, s, instances: np.ndarray | None = None) -> float | None:
    """Motif conductance of vertex set ``s`` in ``g``; ``None`` if undefined."""
    mask = np.zeros(g.n, dtype=bool)
    idx = np.asarray(list(s) if not isinstance(s, np.ndarray) else s, dtype=np.int64)
    if len(idx) and (idx.min() < 0 or idx.max() >= g.n):
        raise ValueError("vertex not in graph")
    mask[idx] = True
    if not mask.any() or mask.all():
        raise ValueError("both the set and its complement must be nonempty")
    if instances is None:
        instances = enumerate_motifs(g, spec)
    return conductance_from_instances(instances, mask)
