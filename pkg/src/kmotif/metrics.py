"""Cluster quality indices: modularity, collaboration intensity, compactness, separation.

Distances between vertices are shortest-path hop counts. Vertices carry no
coordinates, so this is the only distance the graph supports.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csgraph

from .graph import Graph, induced_subgraph

log = logging.getLogger(__name__)

ClusterLike = Sequence[Iterable[int]]


class DisconnectedClusterError(ValueError):
    """A cluster whose induced subgraph is disconnected has no finite compactness."""


def _as_arrays(clusters) -> list[np.ndarray]:
    items = getattr(clusters, "clusters", clusters)
    out = []
    for c in items:
        mem = getattr(c, "members", c)
        out.append(np.unique(np.asarray(list(mem) if not isinstance(mem, np.ndarray) else mem, dtype=np.int64)))
    return out


def _check_disjoint(groups: list[np.ndarray], n: int) -> None:
    seen = np.zeros(n, dtype=np.int64)
    for g in groups:
        if len(g) and (g.min() < 0 or g.max() >= n):
            raise ValueError("cluster vertex not in graph")
        seen[g] += 1
    if np.any(seen > 1):
        raise ValueError("clusters overlap")


def modularity(g: Graph, clusters, weighted: bool = False) -> float:
    """Newman modularity of a partition of (a subset of) the vertices.

    Unclustered vertices are dropped together with their edges, and ``m``
    is recounted on what remains. Two clusters are scored with the signed
    indicator form ``(s^T A s - (k^T s)^2 / 2m) / 4m``; more clusters use
    ``sum_c e_c/m - (d_c/2m)^2``. The two agree when there are two clusters.
    """
    groups = [c for c in _as_arrays(clusters) if len(c)]
    _check_disjoint(groups, g.n)
    members = np.concatenate(groups) if groups else np.zeros(0, dtype=np.int64)
    sub, orig = induced_subgraph(g, members)
    A = sub.to_sparse(weighted=weighted)
    two_m = float(A.sum())
    if two_m == 0:
        raise ValueError("no edges among clustered vertices")
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[orig] = np.arange(len(orig))
    label = np.empty(len(orig), dtype=np.int64)
    for i, grp in enumerate(groups):
        label[pos[grp]] = i
    k = np.asarray(A.sum(axis=1)).ravel()
    if len(groups) == 2:
        s = np.where(label == 0, 1.0, -1.0)
        return float((s @ (A @ s) - (k @ s) ** 2 / two_m) / (2 * two_m))
    coo = A.tocoo()
    inside = label[coo.row] == label[coo.col]
    e = np.bincount(label[coo.row[inside]], weights=coo.data[inside], minlength=len(groups))
    d = np.bincount(label, weights=k, minlength=len(groups))
    return float(np.sum(e / two_m - (d / two_m) ** 2))


def cii(papers_i: int, papers_j: int, co_papers: int) -> float:
    """Collaboration intensity ``co^2 / (p_i p_j)``; 1.0 for exclusive collaborators."""
    if papers_i <= 0 or papers_j <= 0:
        raise ValueError("paper counts must be positive")
    if co_papers < 0:
        raise ValueError("co-paper count must be nonnegative")
    if co_papers > papers_i or co_papers > papers_j:
        raise ValueError("co-paper count exceeds an author's paper count")
    return co_papers * co_papers / (papers_i * papers_j)


def cii_edges(papers: dict[str, int], co_papers: Iterable[tuple[str, str, int]]) -> list[tuple[str, str, float]]:
    """Weighted edge list with CII weights from per-author and per-pair paper counts."""
    out = []
    for a, b, c in co_papers:
        try:
            pa, pb = papers[a], papers[b]
        except KeyError as exc:
            raise ValueError(f"no paper count for author {exc.args[0]!r}") from None
        out.append((a, b, cii(pa, pb, c)))
    return out


def _center(sub: Graph, rng: np.random.Generator | None) -> int:
    deg = sub.degrees
    top = np.flatnonzero(deg == deg.max())
    if rng is None or len(top) == 1:
        return int(top[0])
    return int(rng.choice(top))


def cluster_center(g: Graph, cluster, rng: np.random.Generator | None = None) -> int:
    """Vertex of maximum degree inside the cluster; ties go to the lowest id unless ``rng`` is given."""
    mem = _as_arrays([cluster])[0]
    if not len(mem):
        raise ValueError("empty cluster")
    sub, orig = induced_subgraph(g, mem)
    return int(orig[_center(sub, rng)])


def ccp(g: Graph, cluster, rng: np.random.Generator | None = None) -> float:
    """Mean hop distance from each member to the cluster center, inside the cluster."""
    mem = _as_arrays([cluster])[0]
    if not len(mem):
        raise ValueError("empty cluster")
    sub, _ = induced_subgraph(g, mem)
    c = _center(sub, rng)
    dist = csgraph.shortest_path(sub.to_sparse(weighted=False), unweighted=True, indices=c, directed=False)
    if not np.all(np.isfinite(dist)):
        raise DisconnectedClusterError("cluster is not connected")
    return float(dist.mean())


@dataclass(frozen=True)
class SeparationResult:
    value: float  # NaN when no pair of centers is connected
    included_pairs: int
    disconnected_pairs: int


def csp(g: Graph, clusters, rng: np.random.Generator | None = None) -> SeparationResult:
    """Mean hop distance in ``g`` between cluster centers, over connected pairs."""
    groups = _as_arrays(clusters)
    if len(groups) < 2:
        raise ValueError("separation needs at least two clusters")
    centers = np.array([cluster_center(g, c, rng) for c in groups])
    dist = csgraph.shortest_path(
        g.to_sparse(weighted=False), unweighted=True, indices=centers, directed=False
    )[:, centers]
    d = np.array([dist[i, j] for i, j in combinations(range(len(centers)), 2)])
    ok = np.isfinite(d)
    value = float(d[ok].mean()) if ok.any() else math.nan
    return SeparationResult(value, int(ok.sum()), int((~ok).sum()))


@dataclass
class ClusterMetrics:
    modularity: float
    avg_ccp: float
    per_cluster_ccp: list[float | None]
    avg_csp: float
    csp_disconnected_pairs: int
    cii_table: dict[tuple[int, int], float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "modularity": self.modularity,
            "avg_ccp": self.avg_ccp,
            "per_cluster_ccp": self.per_cluster_ccp,
            "avg_csp": self.avg_csp,
            "csp_disconnected_pairs": self.csp_disconnected_pairs,
        }


def evaluate(g: Graph, clusters, weighted: bool = False) -> ClusterMetrics:
    """All indices for one clustering. Undefined entries come back as ``None`` or NaN."""
    groups = [c for c in _as_arrays(clusters) if len(c)]
    try:
        q = modularity(g, groups, weighted=weighted)
    except ValueError:
        q = math.nan
    per: list[float | None] = []
    for grp in groups:
        try:
            per.append(ccp(g, grp))
        except DisconnectedClusterError:
            log.warning("cluster starting at vertex %d is disconnected; compactness undefined", grp[0])
            per.append(None)
    defined = [v for v in per if v is not None]
    avg_ccp = float(np.mean(defined)) if defined else math.nan
    if len(groups) >= 2:
        sep = csp(g, groups)
        avg_csp, bad = sep.value, sep.disconnected_pairs
    else:
        avg_csp, bad = math.nan, 0
    return ClusterMetrics(q, avg_ccp, per, avg_csp, bad)
