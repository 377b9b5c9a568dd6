"""Core poset structure: closure, covers, masks, duality, parsing."""

import pytest
from hypothesis import given, strategies as st

from posetsync.errors import InputError
from posetsync.poset import Poset, parse_poset, poset_doc


def test_transitive_closure_and_covers(chain3):
    assert chain3.leq("lo", "hi")
    assert chain3.lt("lo", "hi")
    assert chain3.covers == (("lo", "mid"), ("mid", "hi"))


def test_redundant_pair_not_a_cover():
    p = Poset.from_relations(["a", "b", "c"],
                             [("a", "b"), ("b", "c"), ("a", "c")])
    assert p.covers == (("a", "b"), ("b", "c"))


def test_cycle_rejected():
    with pytest.raises(InputError):
        Poset.from_relations(["a", "b"], [("a", "b"), ("b", "a")])


def test_disconnected_rejected_by_default():
    with pytest.raises(InputError):
        Poset.from_relations(["a", "b", "c", "d"],
                             [("a", "b"), ("c", "d")])
    Poset.from_relations(["a", "b", "c", "d"], [("a", "b"), ("c", "d")],
                         require_connected=False)


def test_extremes_and_bounds(triple_bridge, chain3):
    assert triple_bridge.minimal_elements() == ["b0", "b1", "b2"]
    assert triple_bridge.maximal_elements() == ["t0", "t1", "t2"]
    assert triple_bridge.bottom() is None
    assert chain3.bottom() == "lo" and chain3.top() == "hi"


def test_principal_sets_and_minimals_below(triple_bridge):
    assert triple_bridge.principal_up_set("b1") == ["b1", "t0", "t1", "t2"]
    assert triple_bridge.minimals_below("t1") == ["b0", "b1", "b2"]
    assert triple_bridge.maximals_above("b0") == ["t0", "t1"]


def test_dual_reverses(crown44):
    d = crown44.dual()
    assert d.leq("a0", "b0") and not d.leq("b0", "a0")
    assert d.dual() == crown44


def test_comparable_pairs(y_branch_up):
    pairs = y_branch_up.comparable_pairs()
    assert ("left", "mid") in pairs and ("left", "top") in pairs
    assert all(y_branch_up.lt(a, b) for a, b in pairs)
    assert len(pairs) == 5


def test_induced_subposet(crown44):
    sub = crown44.induced(["b1", "a11", "a12"])
    assert sub.leq("b1", "a11") and not sub.comparable("a11", "a12")


def test_doc_round_trip(hexagon):
    assert parse_poset(poset_doc(hexagon)) == hexagon


def test_parse_rejects_malformed():
    with pytest.raises(InputError):
        parse_poset({"elements": ["a"]})
    with pytest.raises(InputError):
        parse_poset({"elements": ["a", "a"], "covers": []})
    with pytest.raises(InputError):
        parse_poset({"elements": ["a", "b"], "covers": [["a", "x"]]})


@st.composite
def random_tree_relations(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    labels = [f"e{i}" for i in range(n)]
    pairs = []
    for i in range(1, n):
        j = draw(st.integers(min_value=0, max_value=i - 1))
        if draw(st.booleans()):
            pairs.append((labels[j], labels[i]))
        else:
            pairs.append((labels[i], labels[j]))
    return labels, pairs


@given(random_tree_relations())
def test_tree_relations_have_tree_hasse(data):
    labels, pairs = data
    poset = Poset.from_relations(labels, pairs)
    assert len(poset.covers) == len(labels) - 1
    assert sorted(map(tuple, poset.covers)) == sorted(
        (a, b) if poset.leq(a, b) else (b, a) for a, b in pairs)


@given(random_tree_relations())
def test_up_and_down_masks_partition_comparables(data):
    labels, pairs = data
    poset = Poset.from_relations(labels, pairs)
    for x in poset.elements:
        ups = set(poset.principal_up_set(x))
        downs = set(poset.principal_down_set(x))
        assert ups & downs == {x}
        for y in poset.elements:
            assert poset.comparable(x, y) == (y in ups or y in downs)
