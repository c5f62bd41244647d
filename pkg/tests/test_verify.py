import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import linalg

from helpers import barbell, complete, graphs
from kmotif.graph import Graph
from kmotif.kcc import decompose
from kmotif.motif import motif_adjacency
from kmotif.spectral import build_laplacian, motif_components
from kmotif.verify import (
    check_adjacency_perturbation,
    check_laplacian_perturbation,
    check_spectral_ordering,
    laplacian_bounds,
    split_adjacency,
    zero_multiplicity,
)
from oracles import random_connected_graph, random_graph


def test_split_adjacency_sums_back():
    g = barbell()
    A, Ak, At = split_adjacency(g, decompose(g, 3))
    assert np.array_equal(A, Ak + At)
    assert At.sum() == 4 and At[0, 4] == 1 and At[1, 5] == 1


def test_nothing_removed_means_zero_delta():
    rep = check_adjacency_perturbation(complete(5), 3)
    assert rep.delta == 0.0 and rep.removed_edges == 0
    assert rep.lambda_min_A_G == pytest.approx(rep.lambda_min_A_k, abs=1e-12)
    assert rep.holds


def test_barbell_adjacency_values():
    rep = check_adjacency_perturbation(barbell(), 3)
    # the removed edges form a matching, so their spectral norm is 1
    assert rep.delta == pytest.approx(1.0, abs=1e-12)
    # two disjoint K4s have lambda_min = -1
    assert rep.lambda_min_A_k == pytest.approx(-1.0, abs=1e-12)
    assert rep.holds


def test_delta_is_largest_singular_value():
    rng = np.random.default_rng(31)
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(5, 51)), float(rng.uniform(0.05, 0.3)))
        if g.m == 0:
            continue
        dec = decompose(g, 3)
        _, _, At = split_adjacency(g, dec)
        want = linalg.svdvals(At).max() if At.any() else 0.0
        assert check_adjacency_perturbation(g, 3, dec).delta == pytest.approx(want, abs=1e-9)


@settings(max_examples=60)
@given(graphs(min_n=2, max_n=14), st.integers(1, 4))
def test_adjacency_bound_holds(g, k):
    assert check_adjacency_perturbation(g, k).holds


def test_barbell_laplacian_bounds():
    b = laplacian_bounds(barbell(), 3)
    # both sides have a zero normalized-Laplacian eigenvalue
    assert b["diff"] == pytest.approx(0.0, abs=1e-12)
    assert b["upper"] >= b["diff"]
    # the lower bound is strictly positive here, so the claimed inequality fails
    assert b["lower"] > 0.1


def test_laplacian_diff_is_zero_on_random_graphs():
    rng = np.random.default_rng(5)
    for _ in range(40):
        g = random_connected_graph(rng, int(rng.integers(6, 30)), 0.25)
        for k in (2, 3):
            if not decompose(g, k).subgraphs:
                continue
            rep = check_laplacian_perturbation(g, k)
            assert abs(rep.laplacian_diff) <= 1e-8
            assert rep.upper_holds


def test_laplacian_bounds_need_kept_edges():
    with pytest.raises(ValueError):
        laplacian_bounds(Graph.from_edges(3, [(0, 1), (1, 2)]), 2)


def test_spectral_ordering_examples():
    lap = build_laplacian(motif_adjacency(complete(5), "M32"))
    assert zero_multiplicity(lap) == 1 and check_spectral_ordering(lap)
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    lap = build_laplacian(motif_adjacency(two, "M32"))
    assert zero_multiplicity(lap) == 2 and check_spectral_ordering(lap, components=2)
    assert not check_spectral_ordering(lap, components=1)


def test_spectral_ordering_on_random_motif_graphs():
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(60):
        g = random_graph(rng, int(rng.integers(6, 40)), float(rng.uniform(0.05, 0.3)))
        for mid in ("M32", "M44"):
            adj = motif_adjacency(g, mid)
            if not adj.degree.any():
                continue
            lap = build_laplacian(adj)
            assert check_spectral_ordering(lap)
            assert zero_multiplicity(lap) == len(motif_components(adj))
            checked += 1
    assert checked > 40
