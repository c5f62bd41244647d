import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import barbell, complete, graphs
from kmotif.graph import Graph, connected_components
from kmotif.mincut import AtLeastK, DisconnectedGraphError, sw_mincut, sw_mincut_bounded
from oracles import cut_weight, exhaustive_mincut, random_connected_graph


def test_path_bridge():
    r = sw_mincut(Graph.from_edges(3, [(0, 1), (1, 2)]))
    assert r.weight == 1
    assert len(r.cut_edges) == 1 and tuple(r.cut_edges[0]) in {(0, 1), (1, 2)}


def test_k4():
    r = sw_mincut(complete(4))
    assert r.weight == 3
    assert sorted((len(r.side_a), len(r.side_b))) == [1, 3]


def test_barbell_cut_is_the_bridge_pair():
    r = sw_mincut(barbell())
    assert r.weight == 2
    assert sorted(map(tuple, r.cut_edges.tolist())) == [(0, 4), (1, 5)]
    assert {frozenset(r.side_a.tolist()), frozenset(r.side_b.tolist())} == {
        frozenset(range(4)),
        frozenset(range(4, 8)),
    }


def test_bounded_examples():
    r = sw_mincut_bounded(barbell(), 3)
    assert not isinstance(r, AtLeastK) and r.weight == 2
    assert isinstance(sw_mincut_bounded(complete(4), 3), AtLeastK)
    assert isinstance(sw_mincut_bounded(Graph.from_edges(2, [(0, 1)]), 1), AtLeastK)


def test_errors():
    with pytest.raises(DisconnectedGraphError):
        sw_mincut(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        sw_mincut(Graph.empty(1))
    with pytest.raises(ValueError):
        sw_mincut_bounded(complete(3), 0)


def test_weighted_cut_prefers_light_edges():
    # heavy triangle 0-1-2, light pendant 3
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)], [5, 5, 5, 1, 1])
    assert sw_mincut(g, weighted=True).weight == 2
    assert sw_mincut(g).weight == 2


def test_start_and_seed_do_not_change_value():
    rng = np.random.default_rng(5)
    for _ in range(30):
        g = random_connected_graph(rng, int(rng.integers(3, 10)), 0.4)
        base = sw_mincut(g).weight
        assert sw_mincut(g, start=g.n - 1).weight == base
        assert sw_mincut(g, seed=11).weight == base


@pytest.mark.parametrize("weighted", [False, True])
def test_matches_exhaustive_on_random_graphs(weighted):
    rng = np.random.default_rng(17 if weighted else 16)
    for _ in range(150):
        n = int(rng.integers(2, 11))
        g = random_connected_graph(rng, n, float(rng.uniform(0.05, 0.8)), weighted=weighted)
        w = g.edge_weights() if weighted else np.ones(g.m)
        assert sw_mincut(g, weighted=weighted).weight == exhaustive_mincut(n, g.edges(), w)


@given(graphs(min_n=2, max_n=9, connected=True))
def test_cut_realization(g):
    r = sw_mincut(g)
    assert len(r.side_a) and len(r.side_b)
    assert sorted(np.concatenate([r.side_a, r.side_b]).tolist()) == list(range(g.n))
    assert 0 in r.side_a
    assert cut_weight(g, r.side_b) == r.weight == len(r.cut_edges)
    assert len(connected_components(g.without_edges(r.cut_edges))) >= 2


@given(graphs(min_n=2, max_n=9, connected=True), st.integers(1, 5))
def test_bounded_soundness(g, k):
    exact = sw_mincut(g).weight
    r = sw_mincut_bounded(g, k)
    if isinstance(r, AtLeastK):
        assert exact >= k
    else:
        assert r.weight < k
        assert cut_weight(g, r.side_b) == r.weight
