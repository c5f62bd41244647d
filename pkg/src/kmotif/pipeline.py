"""Decompose-then-cluster pipeline and its no-decomposition baseline.

The graph is pruned (light edges, then vertices of degree below ``k`` to a
fixpoint), split into maximal k-edge-connected pieces, and every piece is
clustered independently by recursive spectral bisection on the motif
Laplacian. In baseline mode the whole graph is clustered as a single piece.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, induced_subgraph
from .kcc import decompose
from .motif import MotifSpec, adjacency_from_instances, enumerate_motifs, get_motif, instance_degree
from .spectral import build_laplacian, fiedler_vector, instance_components, sweep_cut

log = logging.getLogger(__name__)

MODES = ("auto", "st", "ap", "baseline")


class ClusteringError(RuntimeError):
    """A module failure, tagged with the piece it happened in."""


def classify_mode(spec: MotifSpec | str, k: int) -> str:
    """``"st"`` when no instance of the motif can be cut by the decomposition, else ``"ap"``."""
    return "st" if get_motif(spec).min_degree >= k else "ap"


@dataclass
class ChiefConfig:
    motif: MotifSpec | str
    k: int = 3
    mode: str = "auto"
    min_cluster_size: int | None = None
    max_conductance: float = 0.5
    weight_threshold: float = 0.0
    weighted: bool = False
    threads: int = 1

    def __post_init__(self):
        self.motif = get_motif(self.motif)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.min_cluster_size is None:
            self.min_cluster_size = 2 * self.motif.size
        if self.min_cluster_size < self.motif.size:
            raise ValueError("min_cluster_size must be at least the motif size")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def resolved_mode(self) -> str:
        if self.mode == "auto":
            return classify_mode(self.motif, self.k)
        return self.mode


@dataclass(frozen=True)
class Cluster:
    members: np.ndarray
    conductance: float | None
    piece: int
    path: tuple[int, ...]
    depth: int


@dataclass
class ClusterSet:
    n: int
    clusters: list[Cluster]
    unclustered: np.ndarray

    def labels(self) -> np.ndarray:
        lab = np.full(self.n, -1, dtype=np.int64)
        for i, c in enumerate(self.clusters):
            lab[c.members] = i
        return lab

    def families(self) -> set[frozenset[int]]:
        return {frozenset(c.members.tolist()) for c in self.clusters}


@dataclass
class RunStats:
    mode: str
    timings_ms: dict[str, float] = field(default_factory=dict)
    pieces: int = 0
    instances: int = 0
    clusters: int = 0
    unclustered: int = 0
    peak_piece_size: int = 0
    instances_per_piece: list[int] = field(default_factory=list)

    def add_time(self, phase: str, seconds: float) -> None:
        self.timings_ms[phase] = self.timings_ms.get(phase, 0.0) + 1000.0 * seconds

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "timings_ms": {k: round(v, 3) for k, v in sorted(self.timings_ms.items())},
            "pieces": self.pieces,
            "instances": self.instances,
            "clusters": self.clusters,
            "unclustered": self.unclustered,
            "peak_piece_size": self.peak_piece_size,
            "instances_per_piece": list(self.instances_per_piece),
        }


def filter_light_edges(g: Graph, weight_threshold: float) -> Graph:
    if weight_threshold <= 0:
        return g
    w = g.edge_weights()
    keep = w >= weight_threshold
    return Graph.from_edges(g.n, g.edges()[keep], w[keep])


def prune(g: Graph, k: int, weight_threshold: float = 0.0) -> tuple[Graph, np.ndarray]:
    """Drop edges lighter than ``weight_threshold``, then strip vertices of degree below ``k``.

    Vertex removal repeats until every survivor has degree at least ``k``.
    The returned graph keeps the original vertex ids; removed vertices are
    left isolated and listed in the second return value.
    """
    g = filter_light_edges(g, weight_threshold)
    A = g.to_sparse(weighted=False)
    alive = np.ones(g.n, dtype=bool)
    while True:
        deg = A @ alive.astype(np.int64)
        drop = alive & (deg < k)
        if not drop.any():
            break
        alive &= ~drop
    removed = np.flatnonzero(~alive)
    if len(removed):
        e = g.edges()
        keep = alive[e[:, 0]] & alive[e[:, 1]]
        g = Graph.from_edges(g.n, e[keep], g.edge_weights()[keep])
    return g, removed


@dataclass
class _PieceResult:
    clusters: list[tuple[np.ndarray, tuple[int, ...]]]
    unclustered: list[np.ndarray]
    instances: np.ndarray
    timings: dict[str, float]


def _cluster_piece(g: Graph, piece: np.ndarray, cfg: ChiefConfig) -> _PieceResult:
    timings = {"enumerate": 0.0, "eigensolve": 0.0, "sweep": 0.0}
    spec = cfg.motif
    sub, orig = induced_subgraph(g, piece)
    t = time.perf_counter()
    inst = enumerate_motifs(sub, spec)
    timings["enumerate"] += time.perf_counter() - t

    clusters: list[tuple[np.ndarray, tuple[int, ...]]] = []
    unclustered: list[np.ndarray] = []
    stack: list[tuple[np.ndarray, tuple[int, ...], np.ndarray]] = [(np.arange(sub.n), (), inst)]
    while stack:
        members, path, parent_inst = stack.pop()
        mask = np.zeros(sub.n, dtype=bool)
        mask[members] = True
        local = parent_inst[mask[parent_inst].all(axis=1)] if len(parent_inst) else parent_inst
        deg = instance_degree(local, sub.n)
        idle = members[deg[members] == 0]
        if len(idle):
            unclustered.append(orig[idle])
        active = members[deg[members] > 0]
        if not len(active):
            continue
        # relabel to 0..len(active)-1 so matrices stay small
        compact = np.searchsorted(active, local)
        comps = instance_components(compact, len(active))
        if len(comps) > 1:
            for i, comp in enumerate(comps):
                stack.append((active[comp], path + (i,), local))
            continue
        if len(active) < cfg.min_cluster_size:
            clusters.append((orig[active], path))
            continue
        t = time.perf_counter()
        adj = adjacency_from_instances(compact, len(active), spec.size)
        lap = build_laplacian(adj)
        _, z = fiedler_vector(lap)
        timings["eigensolve"] += time.perf_counter() - t
        t = time.perf_counter()
        sw = sweep_cut(adj, lap, z)
        timings["sweep"] += time.perf_counter() - t
        if sw.best_conductance > cfg.max_conductance:
            clusters.append((orig[active], path))
            continue
        stack.append((active[sw.complement], path + (1,), local))
        stack.append((active[sw.cluster], path + (0,), local))
    return _PieceResult(clusters, unclustered, orig[inst] if len(inst) else inst, timings)


def cluster_conductances(instances: np.ndarray, labels: np.ndarray, count: int) -> list[float | None]:
    """Motif conductance of every labelled cluster against the rest of the graph."""
    if not len(instances):
        return [None] * count
    lab = np.sort(labels[instances], axis=1)
    uniform = lab[:, 0] == lab[:, -1]
    distinct = np.ones_like(lab, dtype=bool)
    distinct[:, 1:] = lab[:, 1:] != lab[:, :-1]
    hits = lab[distinct & ~uniform[:, None]]
    cut = np.bincount(hits[hits >= 0], minlength=count)
    vol = np.bincount(lab[lab >= 0], minlength=count)
    total = instances.size
    out: list[float | None] = []
    for c in range(count):
        low = min(vol[c], total - vol[c])
        out.append(None if low == 0 else float(cut[c] / low))
    return out


def run_chief(g: Graph, cfg: ChiefConfig) -> tuple[ClusterSet, RunStats]:
    """Cluster ``g`` around ``cfg.motif``.

    Recursion on a piece first separates its motif-connected components,
    then bisects with a sweep cut while the part has at least
    ``min_cluster_size`` vertices and the sweep conductance is at most
    ``max_conductance``. Vertices of zero motif degree, pruned vertices and
    decomposition singletons are reported as unclustered. Cluster ids are
    ordered by smallest member, so output does not depend on the order the
    pieces were processed in.
    """
    mode = cfg.resolved_mode
    stats = RunStats(mode=mode)
    t_all = time.perf_counter()
    unclustered: list[np.ndarray] = []
    if mode == "baseline":
        work = filter_light_edges(g, cfg.weight_threshold)
        pieces = [np.arange(g.n)] if g.n else []
    else:
        t = time.perf_counter()
        work, removed = prune(g, cfg.k, cfg.weight_threshold)
        stats.add_time("prune", time.perf_counter() - t)
        t = time.perf_counter()
        dec = decompose(work, cfg.k, weighted=cfg.weighted)
        stats.add_time("decompose", time.perf_counter() - t)
        pieces = dec.subgraphs
        # pruned vertices are isolated in ``work`` and land among the singletons
        unclustered.append(dec.singletons)
    stats.pieces = len(pieces)
    stats.peak_piece_size = max((len(p) for p in pieces), default=0)

    def run(item):
        i, piece = item
        try:
            return _cluster_piece(work, piece, cfg)
        except Exception as exc:
            raise ClusteringError(f"piece {i} ({len(piece)} vertices): {exc}") from exc

    t = time.perf_counter()
    if cfg.threads > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(run, enumerate(pieces)))
    else:
        results = [run(item) for item in enumerate(pieces)]
    stats.add_time("cluster", time.perf_counter() - t)

    raw: list[tuple[np.ndarray, int, tuple[int, ...]]] = []
    inst_parts = []
    for i, res in enumerate(results):
        for members, path in res.clusters:
            raw.append((np.sort(members), i, path))
        unclustered.extend(res.unclustered)
        inst_parts.append(res.instances)
        stats.instances_per_piece.append(len(res.instances))
        for phase, sec in res.timings.items():
            stats.add_time(phase, sec)
    raw.sort(key=lambda r: int(r[0][0]))
    labels = np.full(g.n, -1, dtype=np.int64)
    for cid, (members, _, _) in enumerate(raw):
        labels[members] = cid
    size = cfg.motif.size
    all_inst = np.concatenate(inst_parts) if inst_parts else np.zeros((0, size), dtype=np.int64)
    conds = cluster_conductances(all_inst, labels, len(raw))
    clusters = [
        Cluster(members, cond, piece, path, len(path)) for (members, piece, path), cond in zip(raw, conds)
    ]
    left = np.unique(np.concatenate(unclustered)) if unclustered else np.zeros(0, dtype=np.int64)
    stats.instances = int(len(all_inst))
    stats.clusters = len(clusters)
    stats.unclustered = int(len(left))
    stats.add_time("total", time.perf_counter() - t_all)
    return ClusterSet(g.n, clusters, left), stats


def motif_preservation(g: Graph, spec: MotifSpec | str, k: int) -> bool:
    """Whether every motif instance of ``g`` lies inside one maximal k-edge-connected piece."""
    spec = get_motif(spec)
    want = enumerate_motifs(g, spec)
    dec = decompose(g, k)
    kept = [enumerate_motifs(induced_subgraph(g, mem)[0], spec) for mem in dec.subgraphs]
    got = [mem[inst] for mem, inst in zip(dec.subgraphs, kept) if len(inst)]
    have = np.concatenate(got) if got else np.zeros((0, spec.size), dtype=np.int64)
    if len(have) != len(want):
        return False
    have = have[np.lexsort(have.T[::-1])]
    return bool(np.array_equal(have, want))


def st_preservation_check(g: Graph, spec: MotifSpec | str, k: int) -> bool:
    """:func:`motif_preservation`, restricted to the exact regime (motif min degree >= k)."""
    spec = get_motif(spec)
    if spec.min_degree < k:
        raise ValueError(f"{spec.id} has minimum degree {spec.min_degree} < k={k}; not the exact regime")
    return motif_preservation(g, spec, k)
