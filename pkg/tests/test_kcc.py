import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import barbell, complete, graphs
from kmotif.graph import Graph, induced_subgraph
from kmotif.kcc import decompose, decompose_from_base
from kmotif.mincut import sw_mincut
from oracles import brute_force_kecs, random_graph, to_nx


def test_k4_survives():
    d = decompose(complete(4), 3)
    assert d.member_sets() == {frozenset(range(4))}
    assert len(d.removed_edges) == 0 and len(d.singletons) == 0


def test_barbell_two_pieces():
    d = decompose(barbell(), 3)
    assert d.member_sets() == {frozenset(range(4)), frozenset(range(4, 8))}
    assert sorted(map(tuple, d.removed_edges.tolist())) == [(0, 4), (1, 5)]


def test_k1_is_components_and_empty_graph():
    g = Graph.from_edges(5, [(0, 1), (2, 3)])
    d = decompose(g, 1)
    assert d.member_sets() == {frozenset({0, 1}), frozenset({2, 3})}
    assert d.singletons.tolist() == [4]
    e = decompose(Graph.empty(0), 2)
    assert e.subgraphs == [] and len(e.singletons) == 0
    with pytest.raises(ValueError):
        decompose(g, 0)


def test_labels_and_order():
    d = decompose(barbell(), 3)
    assert d.labels().tolist() == [0, 0, 0, 0, 1, 1, 1, 1]
    tail = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    d = decompose(tail, 3)
    assert d.labels().tolist() == [0, 0, 0, 0, -1]
    assert d.singletons.tolist() == [4]


def test_weighted_threshold_uses_weights():
    # two vertices joined by a single heavy edge are 3-connected when weighted
    g = Graph.from_edges(3, [(0, 1), (1, 2)], [3.0, 1.0])
    assert decompose(g, 3, weighted=True).member_sets() == {frozenset({0, 1})}
    assert decompose(g, 3).member_sets() == set()


def test_matches_brute_force_and_networkx():
    rng = np.random.default_rng(42)
    for _ in range(60):
        n = int(rng.integers(2, 12))
        g = random_graph(rng, n, float(rng.uniform(0.2, 0.8)))
        for k in (2, 3, 4):
            got = decompose(g, k).member_sets()
            assert got == brute_force_kecs(g, k)
            assert got == {frozenset(c) for c in nx.k_edge_subgraphs(to_nx(g), k) if len(c) > 1}


@given(graphs(max_n=11), st.integers(1, 4))
def test_partition_soundness_and_removed_edges(g, k):
    d = decompose(g, k)
    seen = np.zeros(g.n, dtype=int)
    for mem in d.subgraphs:
        seen[mem] += 1
        assert len(mem) >= 2
        assert sw_mincut(induced_subgraph(g, mem)[0]).weight >= k
    seen[d.singletons] += 1
    assert np.all(seen == 1)
    lab = d.labels()
    e = g.edges()
    crossing = (lab[e[:, 0]] != lab[e[:, 1]]) | (lab[e[:, 0]] < 0)
    assert sorted(map(tuple, e[crossing].tolist())) == sorted(map(tuple, d.removed_edges.tolist()))


@given(graphs(max_n=11), st.integers(2, 4))
def test_maximality(g, k):
    # merging any two pieces, with every original edge between them, never gives a k-connected graph
    d = decompose(g, k)
    for i in range(len(d.subgraphs)):
        for j in range(i + 1, len(d.subgraphs)):
            union = np.concatenate([d.subgraphs[i], d.subgraphs[j]])
            sub, _ = induced_subgraph(g, union)
            comps = nx.number_connected_components(to_nx(sub))
            assert comps > 1 or sw_mincut(sub).weight < k


@given(graphs(max_n=11), st.integers(1, 4), st.integers(0, 2**16))
def test_order_independence(g, k, seed):
    assert decompose(g, k, rng=random.Random(seed)).member_sets() == decompose(g, k).member_sets()


def test_from_base_idempotent():
    base = decompose(barbell(), 3)
    assert decompose_from_base(base, barbell(), 3) is base


@given(graphs(max_n=12), st.integers(1, 5), st.integers(1, 5))
def test_from_base_matches_direct(g, k_base, k):
    base = decompose(g, k_base)
    assert decompose_from_base(base, g, k).member_sets() == decompose(g, k).member_sets()


def test_from_base_named_pairs():
    rng = np.random.default_rng(8)
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(4, 13)), 0.6)
        assert decompose_from_base(decompose(g, 2), g, 4).member_sets() == decompose(g, 4).member_sets()
        assert decompose_from_base(decompose(g, 5), g, 3).member_sets() == decompose(g, 3).member_sets()


def test_from_base_rejects_foreign_base():
    with pytest.raises(ValueError):
        decompose_from_base(decompose(complete(5), 2), complete(4), 3)


def test_nesting_across_k():
    rng = np.random.default_rng(3)
    for _ in range(30):
        g = random_graph(rng, 12, 0.5)
        prev = decompose(g, 1).labels()
        for k in range(2, 7):
            cur = decompose(g, k)
            for mem in cur.subgraphs:
                assert len(set(prev[mem].tolist())) == 1 and prev[mem[0]] >= 0
            prev = cur.labels()
