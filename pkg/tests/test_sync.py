"""Shared-bound graphs, spanning trees, local connectivity, descent."""

from fractions import Fraction

import pytest

from posetsync.bijections import make_translation
from posetsync.errors import CapExceeded, InputError
from posetsync.poset import Poset
from posetsync.sync import (MAXIMALS, MINIMALS, all_shortest_paths,
                            descend, edge_support, enumerate_spanning_trees,
                            interlaced_graph, is_locally_connected,
                            is_synchronizable, kruskal, path_composition,
                            product_graph, shortest_path_vertices,
                            sync_reports, tree_path_vertices)


def vee_pair():
    return Poset.from_relations(["a", "b", "c", "d"],
                                [("a", "c"), ("b", "d")],
                                require_connected=False)


def test_edge_support_on_the_triple_bridge(triple_bridge):
    assert edge_support(triple_bridge, "b0", "b1") == ("b0", "b1")
    assert edge_support(triple_bridge, "b0", "b2") == ("b0", "b1", "b2")
    assert edge_support(triple_bridge, "b1", "b2") == ("b1", "b2")


def test_edge_support_needs_a_common_bound():
    with pytest.raises(InputError):
        edge_support(vee_pair(), "a", "b")


def test_interlaced_graph_shape(triple_bridge):
    g = interlaced_graph(triple_bridge, MINIMALS)
    assert g.vertices == ("b0", "b1", "b2")
    assert g.edges == (("b0", "b1"), ("b0", "b2"), ("b1", "b2"))
    assert [g.length(e) for e in g.edges] == [2, 3, 2]
    doc = g.doc()
    assert doc["vertices"] == ["b0", "b1", "b2"]
    with pytest.raises(InputError):
        interlaced_graph(triple_bridge, "sideways")


def test_kruskal_minimum_tree_and_tie_break(triple_bridge, hexagon):
    g = interlaced_graph(triple_bridge, MINIMALS)
    tree = kruskal(g)
    assert tree == (("b0", "b1"), ("b1", "b2"))
    assert g.weight(tree) == 4
    # all hexagon edges tie at length two, so the earlier index pairs win
    h = interlaced_graph(hexagon, MINIMALS)
    assert [h.length(e) for e in h.edges] == [2, 2, 2]
    assert kruskal(h) == (("b0", "b1"), ("b0", "b2"))


def test_kruskal_rejects_a_disconnected_graph():
    g = interlaced_graph(vee_pair(), MINIMALS)
    assert not g.is_connected()
    with pytest.raises(InputError):
        kruskal(g)


def test_triple_bridge_is_synchronizable(triple_bridge):
    report = is_synchronizable(triple_bridge, MINIMALS)
    assert report.synchronizable
    assert report.tree == (("b0", "b1"), ("b1", "b2"))
    assert report.weight == 4
    assert report.violation == {}
    assert sync_reports(triple_bridge)["synchronizable"]
    doc = report.doc()
    assert doc["direction"] == MINIMALS
    assert doc["tree"] == [["b0", "b1"], ["b1", "b2"]]
    assert doc["weight"] == 4


def test_hexagon_fails_local_connectivity(hexagon):
    report = is_synchronizable(hexagon, MINIMALS)
    assert not report.synchronizable
    assert report.violation == {"element": "t2",
                                "minimals_below": ["b1", "b2"],
                                "kind": "not_locally_connected"}
    both = sync_reports(hexagon)
    assert not both["synchronizable"]
    assert not both[MAXIMALS].synchronizable


def test_disconnected_graph_reported_as_violation():
    report = is_synchronizable(vee_pair(), MINIMALS)
    assert not report.synchronizable
    assert report.tree == ()
    assert report.violation == {"kind": "disconnected_graph"}


def test_spanning_tree_enumeration_matches_local_connectivity(triple_bridge):
    g = interlaced_graph(triple_bridge, MINIMALS)
    trees = enumerate_spanning_trees(g)
    assert len(trees) == 3
    best = min(g.weight(t) for t in trees)
    assert best == 4
    for tree in trees:
        assert is_locally_connected(g, tree) == (g.weight(tree) == best)
    with pytest.raises(CapExceeded):
        enumerate_spanning_trees(g, cap_vertices=2)


def test_descend_walks_down_to_the_minimum_tree(triple_bridge):
    g = interlaced_graph(triple_bridge, MINIMALS)
    target = kruskal(g)
    start = (("b0", "b1"), ("b0", "b2"))
    steps = descend(g, start, target)
    assert steps, "a strictly heavier start tree must move"
    for step in steps:
        assert step["weight_after"] <= step["weight_before"]
    assert steps[-1]["weight_after"] == g.weight(target)
    assert descend(g, target, target) == []
    with pytest.raises(InputError):
        descend(g, start, start)  # the start tree is not minimum


def test_tree_path_vertices():
    tree = (("b0", "b1"), ("b1", "b2"))
    assert tree_path_vertices(tree, "b0", "b2") == ["b0", "b1", "b2"]
    assert tree_path_vertices(tree, "b2", "b0") == ["b2", "b1", "b0"]
    assert tree_path_vertices(tree, "b1", "b1") == ["b1"]


def test_product_graph_is_a_four_cycle(bowtie_index):
    prod = product_graph(bowtie_index, (("a", "b"),), (("c", "d"),))
    assert prod.vertices == (("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"))
    assert len(prod.edges) == 4
    assert sorted(prod.neighbors(("a", "c"))) == [("a", "d"), ("b", "c")]
    path = shortest_path_vertices(prod, ("a", "c"), ("b", "d"))
    assert path == [("a", "c"), ("a", "d"), ("b", "d")]
    paths = all_shortest_paths(prod, ("a", "c"), ("b", "d"))
    assert sorted(paths) == [
        [("a", "c"), ("a", "d"), ("b", "d")],
        [("a", "c"), ("b", "c"), ("b", "d")]]
    with pytest.raises(CapExceeded):
        all_shortest_paths(prod, ("a", "c"), ("b", "d"), cap=1)


def test_path_composition_applies_edges_in_order():
    H = Fraction(1, 2)
    swap = make_translation([(0, H, H), (H, 1, -H)])
    shift = {(0, 1): swap, (1, 2): swap}
    phi = path_composition([0, 1, 2], lambda v, w: shift[(v, w)])
    for k in range(4):
        point = Fraction(k, 4)
        assert phi.apply(point) == point  # the swap is an involution
    assert path_composition([0], lambda v, w: swap) is None
