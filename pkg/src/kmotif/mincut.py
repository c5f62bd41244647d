"""Stoer-Wagner global minimum cut and a bounded early-stop variant.

Both work on a contracted weighted graph held as ``{node: {nbr: weight}}``
dictionaries; every supernode remembers the original vertices it absorbed so
cuts are always reported in original labels.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

import numpy as np

from .graph import Graph, connected_components


class DisconnectedGraphError(ValueError):
    """Raised when a min-cut routine receives a disconnected graph."""


@dataclass(frozen=True)
class CutResult:
    weight: float
    cut_edges: np.ndarray
    side_a: np.ndarray
    side_b: np.ndarray


@dataclass(frozen=True)
class AtLeastK:
    """Certificate that the global minimum cut is at least ``k``."""

    k: float


Adjacency = dict[int, dict[int, float]]


def adjacency_dicts(g: Graph, weighted: bool = False) -> Adjacency:
    adj: Adjacency = {}
    ind = g.indices.tolist()
    ptr = g.indptr.tolist()
    wts = g.weights.tolist() if weighted else None
    for v in range(g.n):
        lo, hi = ptr[v], ptr[v + 1]
        if wts is None:
            adj[v] = dict.fromkeys(ind[lo:hi], 1.0)
        else:
            adj[v] = dict(zip(ind[lo:hi], wts[lo:hi]))
    return adj


def ma_order(adj: Adjacency, start: int) -> tuple[list[int], list[float]]:
    """Maximum-adjacency ordering from ``start``.

    Returns the order and, for each vertex, its total edge weight into the
    set of vertices placed before it. Ties go to the lowest node id.
    """
    key: dict[int, float] = {}
    added: set[int] = set()
    order: list[int] = []
    attach: list[float] = []
    heap: list[tuple[float, int]] = [(-0.0, start)]
    key[start] = 0.0
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        negk, v = pop(heap)
        if v in added or -negk != key[v]:
            continue
        added.add(v)
        order.append(v)
        attach.append(key[v])
        for u, w in adj[v].items():
            if u not in added:
                ku = key.get(u, 0.0) + w
                key[u] = ku
                push(heap, (-ku, u))
    if len(order) != len(adj):
        raise DisconnectedGraphError("graph is disconnected")
    return order, attach


def _check_input(g: Graph) -> None:
    if g.n < 2:
        raise ValueError("min cut needs at least two vertices")
    if len(connected_components(g)) != 1:
        raise DisconnectedGraphError("graph is disconnected; cut each component separately")


def _realize(g: Graph, side: list[int] | np.ndarray, weighted: bool, start: int) -> CutResult:
    in_side = np.zeros(g.n, dtype=bool)
    in_side[np.asarray(side, dtype=np.int64)] = True
    if in_side[start]:
        in_side = ~in_side
    # side_a holds the start vertex
    side_a = np.flatnonzero(~in_side)
    side_b = np.flatnonzero(in_side)
    e = g.edges()
    crossing = in_side[e[:, 0]] != in_side[e[:, 1]]
    cut_edges = e[crossing]
    w = g.edge_weights()[crossing] if weighted else np.ones(len(cut_edges))
    return CutResult(float(w.sum()), cut_edges, side_a, side_b)


def sw_mincut(g: Graph, weighted: bool = False, start: int = 0, seed: int | None = None) -> CutResult:
    """Global minimum cut by Stoer-Wagner.

    Runs ``n - 1`` maximum-adjacency phases; after each one the last two
    vertices are merged and the cut isolating the last vertex is a candidate.
    The lightest candidate is returned with its bipartition expressed in
    original vertex labels. ``seed`` picks a random start vertex instead of
    ``start``.
    """
    _check_input(g)
    if seed is not None:
        start = random.Random(seed).randrange(g.n)
    adj = adjacency_dicts(g, weighted)
    members: dict[int, list[int]] = {v: [v] for v in adj}
    best = float("inf")
    best_side: list[int] = []
    root = start
    while len(adj) > 1:
        order, attach = ma_order(adj, root)
        s, t = order[-2], order[-1]
        if attach[-1] < best:
            best = attach[-1]
            best_side = list(members[t])
        for u, w in adj.pop(t).items():
            del adj[u][t]
            if u != s:
                nw = adj[s].get(u, 0.0) + w
                adj[s][u] = nw
                adj[u][s] = nw
        members[s].extend(members.pop(t))
        if t == root:
            root = s
    return _realize(g, best_side, weighted, start)


def light_cut_side(adj: Adjacency, k: float, start: int | None = None) -> list[int] | None:
    """Find one side of a cut lighter than ``k``, or ``None`` if none exists.

    ``adj`` must describe a connected graph and is consumed. Each round
    first checks every supernode for total weight below ``k`` (this covers
    the cut of the phase, which isolates the last-added node), then runs one
    maximum-adjacency phase and merges every consecutive pair whose
    attachment weight is at least ``k``: such pairs cannot be separated by a
    cut lighter than ``k``.
    """
    members: dict[int, list[int]] = {v: [v] for v in adj}
    root = min(adj) if start is None else start
    while len(adj) > 1:
        for v, nb in adj.items():
            if sum(nb.values()) < k:
                return members[v]
        order, attach = ma_order(adj, root)
        parent = {v: v for v in adj}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(1, len(order)):
            if attach[i] >= k:
                a, b = find(order[i - 1]), find(order[i])
                if a != b:
                    if b < a:
                        a, b = b, a
                    parent[b] = a
        rep = {v: find(v) for v in adj}
        merged: Adjacency = {r: {} for r in set(rep.values())}
        for v, nb in adj.items():
            rv = rep[v]
            row = merged[rv]
            for u, w in nb.items():
                ru = rep[u]
                if ru != rv:
                    row[ru] = row.get(ru, 0.0) + w
        new_members: dict[int, list[int]] = {r: [] for r in merged}
        for v, mem in members.items():
            new_members[rep[v]].extend(mem)
        adj, members, root = merged, new_members, rep[root]
    return None


def sw_mincut_bounded(g: Graph, k: float, weighted: bool = False, start: int = 0) -> CutResult | AtLeastK:
    """Either some cut lighter than ``k`` (not necessarily minimum) or an :class:`AtLeastK`."""
    if k < 1:
        raise ValueError("k must be positive")
    _check_input(g)
    side = light_cut_side(adjacency_dicts(g, weighted), k, start)
    if side is None:
        return AtLeastK(k)
    return _realize(g, side, weighted, start)
