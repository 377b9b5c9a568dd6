"""Branching-structure classification and the rooted path tree."""

import pytest

from posetsync.classw import (PathTree, WClass, classify, lower_star_class,
                              upper_star_class)
from posetsync.errors import InputError
from posetsync.poset import Poset


def test_interior_branch_is_rejected(y_branch_up, y_branch_down):
    for poset in (y_branch_up, y_branch_down):
        cls = classify(poset)
        assert cls.tag == WClass.NOT_CLASS_W
        assert cls.bad_branch is not None and cls.pattern is not None


def test_bottom_hub_claw_is_upper_star(claw_bottom_hub):
    assert classify(claw_bottom_hub).tag == WClass.W_STAR_UPPER


def test_top_hub_claw_is_lower_star(claw_top_hub):
    assert classify(claw_top_hub).tag == WClass.W_STAR_LOWER


def test_legged_star_is_lower_star(legged_star):
    assert classify(legged_star).tag == WClass.W_STAR_LOWER


def test_chain_is_up_down(chain2, chain3):
    assert classify(chain2).tag == WClass.UP_DOWN
    assert classify(chain3).tag == WClass.UP_DOWN


def test_zigzag_is_up_down():
    zig = Poset.from_relations(
        ["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])
    assert classify(zig).tag == WClass.UP_DOWN


def test_mixed_branching_is_general():
    # one maximal branch point and one minimal branch point
    poset = Poset.from_relations(
        ["p", "q", "m", "r", "s"],
        [("p", "m"), ("q", "m"), ("m", "r"), ("m", "s")])
    assert classify(poset).tag == WClass.NOT_CLASS_W
    poset = Poset.from_relations(
        ["bot", "x", "y", "w", "u", "v", "top"],
        [("bot", "x"), ("bot", "y"), ("bot", "w"),
         ("w", "top"), ("u", "top"), ("v", "top")])
    assert classify(poset).tag == WClass.GENERAL_W


def test_cycle_hasse_is_not_tree(hexagon):
    cls = classify(hexagon)
    assert cls.tag == WClass.NOT_TREE
    assert cls.tree is None


def test_star_class_predicates():
    assert lower_star_class(WClass.W_STAR_LOWER)
    assert lower_star_class(WClass.UP_DOWN)
    assert not lower_star_class(WClass.W_STAR_UPPER)
    assert upper_star_class(WClass.W_STAR_UPPER)
    assert upper_star_class(WClass.UP_DOWN)
    assert not upper_star_class(WClass.GENERAL_W)


def test_path_tree_addresses_and_order(legged_star):
    tree = PathTree(legged_star, "y0")
    # root path climbs to the top, then branches into the other legs
    assert tree.nodes["1"].path == ("y0", "z")
    kids = tree.nodes["1"].children
    assert len(kids) == 3
    heads = [tree.nodes[a].path for a in kids]
    assert heads == [("y1",), ("y2",), ("y*",)]
    # rooted order: root on top, every element under it
    for x in legged_star.elements:
        assert tree.rooted_leq(x, "y0")


def test_path_tree_rejects_non_leaf_root(chain3):
    with pytest.raises(InputError):
        PathTree(chain3, "mid")


def test_classification_doc_shapes(claw_top_hub, y_branch_up):
    doc = classify(claw_top_hub).doc()
    assert doc["class"] == WClass.W_STAR_LOWER and "tree" in doc
    doc = classify(y_branch_up).doc()
    assert set(doc["witnesses"]) == {"branch", "pattern"}


def test_root_choice_does_not_change_tag(legged_star, claw_bottom_hub):
    for poset in (legged_star, claw_bottom_hub):
        degree = {x: 0 for x in poset.elements}
        for lo, hi in poset.covers:
            degree[lo] += 1
            degree[hi] += 1
        tags = {classify(poset, root=x).tag
                for x in poset.elements if degree[x] == 1}
        assert len(tags) == 1
