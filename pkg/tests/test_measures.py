"""Measures, distribution functions, stochastic order, weight families."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from posetsync.classw import classify
from posetsync.errors import HypothesisError, InputError
from posetsync.measures import (Measure, NodeWeights, df_leq, dist_fn,
                                envelope_weights, head_weights, interlaced,
                                measure_doc, mutually_interlaced,
                                parse_measure, parse_weights, stoch_leq,
                                weights_doc)
from posetsync.oracle import strassen_pair
from posetsync.poset import Poset

from conftest import measure


def test_measure_basics(chain3):
    m = measure(chain3, {"lo": "1/2", "hi": "1/2"})
    assert m.value("lo") == Fraction(1, 2) and m.value("mid") == 0
    assert m.total() == 1 and m.is_probability()
    assert m.support() == ["lo", "hi"]


def test_measure_validation(chain3):
    with pytest.raises(InputError):
        Measure.from_dict(chain3, {"nope": Fraction(1)})
    with pytest.raises(InputError):
        Measure.from_dict(chain3, {"lo": Fraction(-1, 2)})


def test_measure_doc_round_trip(chain3):
    m = measure(chain3, {"lo": "1/3", "mid": "2/3"})
    assert parse_measure(measure_doc(m), chain3) == m
    assert measure_doc(m) == {"mass": {"lo": "1/3", "mid": "2/3"}}


def test_dist_fn_accumulates_along_root_order(legged_star):
    tree = classify(legged_star).tree
    m = measure(legged_star, {"y0": "1/3", "y1": "1/3", "z": "1/3"})
    f = dist_fn(m, tree)
    # rooted at y0: the section at y0 is everything, at z all but y0
    assert f.f("y0") == 1
    assert f.f("z") == Fraction(2, 3)
    assert f.f("y1") == Fraction(1, 3) and f.f("y*") == 0
    assert f.fminus("y1") == 0


def test_stoch_leq_on_chain(chain3_measures):
    low, high = chain3_measures
    assert stoch_leq(low, high)
    assert not stoch_leq(high, low)
    ok, witness = stoch_leq(high, low, witness=True)
    assert not ok
    up = set(witness["up_set"])
    assert up and all(x in ("lo", "mid", "hi") for x in up)


def test_stoch_leq_requires_same_poset(chain2, chain3):
    p = measure(chain2, {"lo": "1"})
    q = measure(chain3, {"lo": "1"})
    with pytest.raises(InputError):
        stoch_leq(p, q)


def test_stoch_leq_routes_agree(triple_bridge):
    p = measure(triple_bridge, {"b0": "1/2", "t0": "1/4", "t2": "1/4"})
    q = measure(triple_bridge, {"t0": "1/2", "t1": "1/4", "t2": "1/4"})
    for a, b in ((p, q), (q, p), (p, p)):
        brute = stoch_leq(a, b)
        flow = stoch_leq(a, b, cap_elements=2)  # force the coupling route
        assert brute == flow == (strassen_pair(a, b) is not None)


def test_df_leq_matches_stoch_leq_on_tree_target(legged_star):
    tree = classify(legged_star).tree
    p = measure(legged_star, {"y0": "1/2", "y1": "1/2"})
    q = measure(legged_star, {"y1": "1/2", "z": "1/2"})
    assert stoch_leq(p, q) == df_leq(dist_fn(p, tree), dist_fn(q, tree), tree)
    assert stoch_leq(q, p) == df_leq(dist_fn(q, tree), dist_fn(p, tree), tree)


def test_node_weights_validation(legged_star):
    tree = classify(legged_star).tree
    w = NodeWeights.from_dict(tree, {"1": Fraction(1),
                                     "1.0": Fraction(1, 2),
                                     "1.1": Fraction(1, 4),
                                     "1.2": Fraction(1, 4)})
    assert w.value("1.0") == Fraction(1, 2)
    assert w.lower("1", tree) == 1  # children sum to the node value
    with pytest.raises(InputError):
        # an address missing from the mapping
        NodeWeights.from_dict(tree, {"1": Fraction(1)})
    with pytest.raises(HypothesisError):
        # children exceeding their node's value
        NodeWeights.from_dict(tree, {"1": Fraction(1, 2),
                                     "1.0": Fraction(1, 2),
                                     "1.1": Fraction(1, 2),
                                     "1.2": Fraction(1, 2)})


def test_weights_doc_round_trip(legged_star):
    tree = classify(legged_star).tree
    w = NodeWeights.from_dict(tree, {"1": Fraction(1),
                                     "1.0": Fraction(1, 3),
                                     "1.1": Fraction(1, 3),
                                     "1.2": Fraction(1, 3)})
    assert parse_weights(weights_doc(w), tree) == w


def test_head_weights_interlace_their_own_function(legged_star):
    tree = classify(legged_star).tree
    m = measure(legged_star, {"y0": "1/6", "y1": "1/3", "y*": "1/2"})
    f = dist_fn(m, tree)
    w = head_weights(f, tree)
    assert interlaced(w, f, tree)
    assert w.value("1") == 1


def test_envelope_weights_interlace_both_ends(legged_star):
    tree = classify(legged_star).tree
    lo = measure(legged_star, {"y0": "1/2", "y1": "1/4", "y*": "1/4"})
    hi = measure(legged_star, {"y1": "1/4", "z": "3/4"})
    assert stoch_leq(lo, hi)
    fa, fb = dist_fn(lo, tree), dist_fn(hi, tree)
    w = envelope_weights(fa, fb, tree)
    assert interlaced(w, fa, tree) and interlaced(w, fb, tree)


def test_envelope_weights_are_mutually_interlaced_across_a_common_end(
        legged_star):
    tree = classify(legged_star).tree
    lo = measure(legged_star, {"y0": "1/2", "y2": "1/2"})
    mid = measure(legged_star, {"y2": "1/2", "z": "1/2"})
    hi = measure(legged_star, {"y0": "1/4", "z": "3/4"})
    assert stoch_leq(lo, mid) and stoch_leq(lo, hi)
    flo, fmid, fhi = (dist_fn(m, tree) for m in (lo, mid, hi))
    wa = envelope_weights(flo, fmid, tree)
    wb = envelope_weights(flo, fhi, tree)
    assert mutually_interlaced(wa, wb, tree)


def test_interlaced_rejects_widened_function(legged_star):
    tree = classify(legged_star).tree
    m = measure(legged_star, {"y0": "1/2", "z": "1/2"})
    other = measure(legged_star, {"y1": "1", })
    w = head_weights(dist_fn(m, tree), tree)
    ok, why = interlaced(w, dist_fn(other, tree), tree, witness=True)
    assert not ok and "address" in why


@given(st.lists(st.integers(min_value=0, max_value=6), min_size=5,
                max_size=5),
       st.lists(st.integers(min_value=0, max_value=6), min_size=5,
                max_size=5))
def test_stoch_leq_agreement_is_universal(raw_p, raw_q):
    poset = Poset.from_relations(
        ["y0", "y1", "y2", "y*", "z"],
        [("y0", "z"), ("y1", "z"), ("y2", "z"), ("y*", "z")])
    if sum(raw_p) == 0 or sum(raw_q) == 0:
        return
    p = Measure.from_dict(poset, {x: Fraction(c, sum(raw_p)) for x, c in
                                  zip(poset.elements, raw_p)})
    q = Measure.from_dict(poset, {x: Fraction(c, sum(raw_q)) for x, c in
                                  zip(poset.elements, raw_q)})
    tree = classify(poset).tree
    brute = stoch_leq(p, q)
    assert brute == df_leq(dist_fn(p, tree), dist_fn(q, tree), tree)
    assert brute == (strassen_pair(p, q) is not None)
    assert brute == stoch_leq(p, q, cap_elements=2)
