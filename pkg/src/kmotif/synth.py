"""Seeded small-world test networks (ring lattice of degree 6 plus rewiring)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

LATTICE_DEGREE = 6
MAX_REDRAWS = 100


@dataclass(frozen=True)
class SynthSpec:
    nv: int
    rrp: float
    seed: int = 0
    ne: int = field(default=-1)

    def __post_init__(self):
        if self.ne == -1:
            object.__setattr__(self, "ne", 3 * self.nv)
        if self.ne != 3 * self.nv:
            raise ValueError("edge count must be three times the vertex count")
        if not 0.0 <= self.rrp <= 1.0:
            raise ValueError("rewiring probability must lie in [0, 1]")
        if self.nv < LATTICE_DEGREE + 1:
            raise ValueError(f"need at least {LATTICE_DEGREE + 1} vertices")


# label -> (vertex count, rewiring probability)
PRESETS: dict[str, tuple[int, float]] = {
    "N1": (10**2, 0.2),
    "N2": (10**3, 0.3),
    "N3": (10**4, 0.4),
    "N4": (10**5, 0.5),
    "N5": (10**6, 0.6),
}
LARGE_PRESETS = frozenset({"N4", "N5"})


def preset(label: str, seed: int = 0) -> SynthSpec:
    nv, rrp = PRESETS[label]
    return SynthSpec(nv, rrp, seed)


def generate(spec: SynthSpec) -> Graph:
    """Watts-Strogatz style graph with exactly ``3 * nv`` edges.

    Every vertex is first joined to its six nearest ring neighbours. Then,
    lattice offset by lattice offset, each edge ``(i, i + j)`` is rewired
    with probability ``rrp`` to ``(i, w)`` for a uniform ``w``; draws that
    would create a self-loop or a duplicate are repeated up to
    ``MAX_REDRAWS`` times before the edge is left in place.
    """
    n = spec.nv
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    adj: list[set[int]] = [set() for _ in range(n)]
    half = LATTICE_DEGREE // 2
    for j in range(1, half + 1):
        for i in range(n):
            t = (i + j) % n
            adj[i].add(t)
            adj[t].add(i)
    for j in range(1, half + 1):
        flips = (rng.random(n) < spec.rrp).tolist()
        for i in range(n):
            if not flips[i]:
                continue
            old = (i + j) % n
            if old not in adj[i]:
                continue
            nbrs = adj[i]
            for w in rng.integers(0, n, size=MAX_REDRAWS).tolist():
                if w != i and w not in nbrs:
                    nbrs.discard(old)
                    adj[old].discard(i)
                    nbrs.add(w)
                    adj[w].add(i)
                    break
    edges = np.array([(u, v) for u in range(n) for v in adj[u] if u < v], dtype=np.int64).reshape(-1, 2)
    return Graph.from_edges(n, edges)
