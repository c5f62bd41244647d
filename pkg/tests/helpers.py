"""Fixture graphs and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from kmotif.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = set(chosen)
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph.from_edges(n, np.array(sorted(edges), dtype=np.int64).reshape(-1, 2))


def barbell() -> Graph:
    """Two K4s on {0..3} and {4..7} joined by the edges 0-4 and 1-5."""
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = k4 + [(u + 4, v + 4) for u, v in k4] + [(0, 4), (1, 5)]
    return Graph.from_edges(8, edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
