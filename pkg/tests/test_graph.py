import numpy as np
import pytest
from hypothesis import given

from helpers import complete, graphs
from kmotif.graph import (
    EdgeListError,
    Graph,
    connected_components,
    induced_subgraph,
    load_edge_list,
    parse_edge_lines,
    write_edge_list,
)
from kmotif.synth import generate, preset


def test_duplicate_lines_sum_weights():
    g, vm, loops = parse_edge_lines(["a b", "b c", "a b"])
    assert (g.n, g.m, loops) == (3, 2, 0)
    assert g.weight(vm.index("a"), vm.index("b")) == 2.0
    assert g.weight(vm.index("b"), vm.index("c")) == 1.0


def test_self_loop_dropped_and_counted():
    g, vm, loops = parse_edge_lines(["a a"])
    assert (g.n, g.m, loops) == (1, 0, 1)


def test_weighted_column_and_comments():
    g, vm, _ = parse_edge_lines(["# header", "x y 2.5  # trailing", "", "y z 0.5"], weighted=True)
    assert g.weight(vm.index("x"), vm.index("y")) == 2.5
    assert g.weight(vm.index("y"), vm.index("z")) == 0.5


def test_unweighted_ignores_third_column():
    g, vm, _ = parse_edge_lines(["x y 7"])
    assert g.weight(0, 1) == 1.0


@pytest.mark.parametrize(
    "lines, where",
    [
        (["a b", "a"], ":2:"),
        (["a b c d"], ":1:"),
        (["a b -1"], ":1:"),
        (["a b", "c d nan?"], ":2:"),
    ],
)
def test_malformed_lines_report_line_number(lines, where):
    with pytest.raises(EdgeListError, match=where):
        parse_edge_lines(lines, weighted=True)


def test_unreadable_file(tmp_path):
    with pytest.raises(OSError):
        load_edge_list(tmp_path / "missing.txt")


def test_n3_file_loads_to_table_shape(tmp_path):
    path = tmp_path / "n3.txt"
    write_edge_list(generate(preset("N3", seed=3)), path)
    assert sum(1 for line in path.read_text().splitlines() if line and not line.startswith("#")) == 30000
    g = load_edge_list(path).graph
    assert (g.n, g.m) == (10_000, 30_000)


def test_induced_subgraph_examples():
    k4 = complete(4)
    sub, orig = induced_subgraph(k4, range(4))
    assert sub.m == 6 and orig.tolist() == [0, 1, 2, 3]
    sub, _ = induced_subgraph(k4, [0, 1, 2])
    assert (sub.n, sub.m) == (3, 3)
    # triangle 0-1-2 with pendant 3 hanging off 2
    tp = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    sub, _ = induced_subgraph(tp, [0, 1, 2])
    assert sorted(map(tuple, sub.edges().tolist())) == [(0, 1), (0, 2), (1, 2)]
    with pytest.raises(ValueError):
        induced_subgraph(k4, [0, 9])


def test_components_examples():
    assert connected_components(Graph.empty(0)) == []
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert [c.tolist() for c in connected_components(two)] == [[0, 1, 2], [3, 4, 5]]


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 5)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1)], [-1.0])


@given(graphs(max_n=12))
def test_degree_sum_and_symmetry(g):
    assert int(g.degrees.sum()) == 2 * g.m
    for u, v in g.edges().tolist():
        assert g.has_edge(u, v) and g.has_edge(v, u)
        assert g.weight(u, v) == g.weight(v, u)
    assert all(v not in g.adj_sets[v] for v in range(g.n))


@given(graphs(max_n=12))
def test_components_partition(g):
    comps = connected_components(g)
    flat = np.concatenate(comps) if comps else np.zeros(0, dtype=int)
    assert sorted(flat.tolist()) == list(range(g.n))
    lab = np.empty(g.n, dtype=int)
    for i, c in enumerate(comps):
        lab[c] = i
    e = g.edges()
    assert np.all(lab[e[:, 0]] == lab[e[:, 1]])


@given(graphs(max_n=12))
def test_round_trip(tmp_path_factory, g):
    path = tmp_path_factory.mktemp("rt") / "g.txt"
    write_edge_list(g, path, header="round trip", weighted=True)
    h, vm, _ = load_edge_list(path, weighted=True)
    # isolated vertices are not representable in an edge list
    assert h.m == g.m
    back = np.array([int(vm.label(i)) for i in range(h.n)], dtype=np.int64)
    got = sorted(tuple(sorted(back[e].tolist())) for e in h.edges())
    assert got == sorted(map(tuple, g.edges().tolist()))
    assert sorted(h.degrees[h.degrees > 0].tolist()) == sorted(g.degrees[g.degrees > 0].tolist())


@given(graphs(max_n=10))
def test_induced_edges_are_parent_edges(g):
    members = list(range(0, g.n, 2))
    sub, orig = induced_subgraph(g, members)
    want = {(u, v) for u, v in g.edges().tolist() if u in members and v in members}
    got = {tuple(orig[e].tolist()) for e in sub.edges()}
    assert got == want
