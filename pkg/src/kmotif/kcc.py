"""Maximal k-edge-connected subgraphs by recursive light-cut splitting.

A piece is split along any cut lighter than ``k`` until no such cut is left.
Every k-edge-connected subgraph survives each split whole, so what remains
is exactly the family of maximal k-edge-connected subgraphs, whatever order
the worklist is processed in.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph, connected_components
from .mincut import Adjacency, adjacency_dicts, light_cut_side


@dataclass(frozen=True)
class Decomposition:
    """Maximal k-edge-connected pieces of a graph on ``n`` vertices.

    ``subgraphs`` holds sorted member arrays (at least two vertices each),
    ordered by smallest member; each induces a subgraph of the parent.
    """

    k: int
    n: int
    subgraphs: list[np.ndarray]
    removed_edges: np.ndarray
    singletons: np.ndarray

    def labels(self) -> np.ndarray:
        """Piece id per vertex; ``-1`` for singletons."""
        lab = np.full(self.n, -1, dtype=np.int64)
        for i, mem in enumerate(self.subgraphs):
            lab[mem] = i
        return lab

    def member_sets(self) -> set[frozenset[int]]:
        return {frozenset(m.tolist()) for m in self.subgraphs}


def _restrict(adj: Adjacency, nodes) -> Adjacency:
    keep = nodes if isinstance(nodes, (set, frozenset)) else set(nodes)
    return {v: {u: w for u, w in adj[v].items() if u in keep} for v in keep}


def _components(adj: Adjacency) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in adj:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        out.append(comp)
    return out


def _peel(adj: Adjacency, k: float) -> list[int]:
    """Strip nodes of weighted degree below ``k`` to a fixpoint, in place.

    Each stripped node is cut off by its own incident edges, a cut lighter
    than ``k``.
    """
    deg = {v: sum(nb.values()) for v, nb in adj.items()}
    queue = deque(v for v, d in deg.items() if d < k)
    gone: list[int] = []
    dead: set[int] = set()
    while queue:
        v = queue.popleft()
        if v in dead:
            continue
        dead.add(v)
        gone.append(v)
        for u, w in adj.pop(v).items():
            del adj[u][v]
            if u not in dead:
                deg[u] -= w
                if deg[u] < k:
                    queue.append(u)
    return gone


def split_pieces(adj: Adjacency, k: float, rng: random.Random | None = None) -> list[list[int]]:
    """Partition the nodes of ``adj`` into maximal k-edge-connected parts.

    Parts of size one are nodes that belong to no k-edge-connected subgraph.
    ``rng`` shuffles the worklist; the resulting family does not depend on it.
    """
    done: list[list[int]] = []
    work: list[Adjacency] = [_restrict(adj, c) for c in _components(adj)]
    while work:
        if rng is not None:
            i = rng.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
        piece = work.pop()
        if len(piece) == 1:
            done.append(list(piece))
            continue
        for v in _peel(piece, k):
            done.append([v])
        if not piece:
            continue
        comps = _components(piece)
        if len(comps) > 1:
            work.extend(_restrict(piece, c) for c in comps)
            continue
        side = light_cut_side(_restrict(piece, piece), k)
        if side is None:
            done.append(sorted(piece))
            continue
        side_set = set(side)
        rest = [v for v in piece if v not in side_set]
        for part in (side, rest):
            sub = _restrict(piece, part)
            work.extend(_restrict(sub, c) for c in _components(sub))
    return done


def _assemble(g: Graph, k: int, parts: list[list[int]]) -> Decomposition:
    lab = np.full(g.n, -1, dtype=np.int64)
    subgraphs = []
    singles = []
    for part in parts:
        if len(part) >= 2:
            subgraphs.append(np.sort(np.asarray(part, dtype=np.int64)))
        else:
            singles.extend(part)
    subgraphs.sort(key=lambda a: int(a[0]))
    for i, mem in enumerate(subgraphs):
        lab[mem] = i
    e = g.edges()
    le, re_ = lab[e[:, 0]], lab[e[:, 1]]
    removed = e[(le != re_) | (le < 0)]
    return Decomposition(k, g.n, subgraphs, removed, np.sort(np.asarray(singles, dtype=np.int64)))


def decompose(g: Graph, k: int, weighted: bool = False, rng: random.Random | None = None) -> Decomposition:
    """All maximal k-edge-connected subgraphs of ``g``.

    ``k = 1`` reduces to connected components. With ``weighted`` the cut
    threshold applies to edge weights instead of edge counts.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1 and not weighted:
        return _assemble(g, k, [c.tolist() for c in connected_components(g)])
    return _assemble(g, k, split_pieces(adjacency_dicts(g, weighted), k, rng))


def _check_base(base: Decomposition, g: Graph) -> None:
    if base.n != g.n:
        raise ValueError("base decomposition was computed on a different vertex set")
    seen = np.zeros(g.n, dtype=np.int64)
    for mem in base.subgraphs:
        seen[mem] += 1
    seen[base.singletons] += 1
    if np.any(seen != 1):
        raise ValueError("base pieces do not partition the graph's vertices")


def decompose_from_base(base: Decomposition, g: Graph, k: int, weighted: bool = False) -> Decomposition:
    """Decompose at ``k`` reusing a decomposition of the same graph at ``base.k``.

    With ``base.k >= k`` each base piece is contracted to a single node
    (contraction preserves k-connectivity between the remaining vertices)
    and the smaller contracted graph is decomposed. With ``base.k < k`` the
    search runs inside each base piece only, since every k-edge-connected
    subgraph already lies inside one of them.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_base(base, g)
    if base.k == k:
        return base
    adj = adjacency_dicts(g, weighted)
    if base.k > k:
        rep = np.arange(g.n, dtype=np.int64)
        for mem in base.subgraphs:
            rep[mem] = mem[0]
        contracted: Adjacency = {int(r): {} for r in np.unique(rep)}
        rep_l = rep.tolist()
        for v, nb in adj.items():
            row = contracted[rep_l[v]]
            rv = rep_l[v]
            for u, w in nb.items():
                ru = rep_l[u]
                if ru != rv:
                    row[ru] = row.get(ru, 0.0) + w
        members: dict[int, list[int]] = {int(r): [] for r in contracted}
        for v, r in enumerate(rep_l):
            members[r].append(v)
        parts = [
            [v for node in part for v in members[node]]
            for part in split_pieces(contracted, k)
        ]
        return _assemble(g, k, parts)
    parts = [[int(v)] for v in base.singletons]
    for mem in base.subgraphs:
        parts.extend(split_pieces(_restrict(adj, mem.tolist()), k))
    return _assemble(g, k, parts)
