"""Piecewise translations and the recursive synchronizing bijections."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from posetsync.bijections import (anchored_sync_bijection, compose,
                                  compose_step, identity_translation,
                                  make_translation, pair_interval_unions,
                                  parse_translation, sync_bijection,
                                  translation_doc)
from posetsync.classw import classify
from posetsync.errors import HypothesisError, InputError, InternalCheckError
from posetsync.measures import (NodeWeights, dist_fn, envelope_weights,
                                head_weights, mutually_interlaced)
from posetsync.poset import Poset
from posetsync.transforms import build_inverse_transform, make_step_map

from conftest import measure

STAR = Poset.from_relations(("y0", "y1", "y2", "y*", "z"),
                            (("y0", "z"), ("y1", "z"), ("y2", "z"),
                             ("y*", "z")))

H = Fraction(1, 2)
Q = Fraction(1, 4)


def test_make_translation_sorts_merges_and_drops_empty():
    phi = make_translation([(H, 1, -H), (0, Q, H), (Q, H, H), (Q, Q, 7)])
    assert phi.pieces == ((Fraction(0), H, H), (H, Fraction(1), -H))
    assert phi.apply(0) == H
    assert phi.apply(Fraction(1, 8)) == H + Fraction(1, 8)
    assert phi.apply(H) == 0


def test_make_translation_rejects_overlaps():
    with pytest.raises(InputError):
        make_translation([(0, H, 0), (Q, 1, H)])
    # disjoint sources whose images collide are just as wrong
    with pytest.raises(InputError):
        make_translation([(0, Q, 0), (H, 1, -H)])


def test_apply_outside_domain_is_rejected():
    phi = make_translation([(0, Q, 0)])
    with pytest.raises(InputError):
        phi.apply(H)
    with pytest.raises(InputError):
        phi.apply(Q)  # half-open: the right endpoint is outside


def test_invert_swaps_sources_and_images():
    phi = make_translation([(0, Q, H), (Q, H, -Q)])
    inv = phi.invert()
    assert inv.invert() == phi
    for point in (Fraction(0), Fraction(1, 8), Q, Fraction(3, 8)):
        assert inv.apply(phi.apply(point)) == point
    assert phi.source_intervals() == inv.image_intervals()


def test_identity_translation():
    ident = identity_translation(H)
    assert ident.apply(Q) == Q
    assert identity_translation(Fraction(0)).pieces == ()


def test_compose_applies_left_to_right():
    swap = make_translation([(0, Q, Q), (Q, H, -Q)])
    shift = make_translation([(0, H, H)])
    both = compose(swap, shift)
    for k in range(8):
        point = Fraction(k, 16)
        assert both.apply(point) == shift.apply(swap.apply(point))
    with pytest.raises(InputError):
        compose(shift, swap)  # shift's images miss swap's domain


def test_compose_step_evaluates_through_the_translation():
    swap = make_translation([(0, Q, Q), (Q, H, -Q)])
    x = make_step_map([(0, Q, "a"), (Q, H, "b")])
    y = compose_step(swap, x)
    for k in range(8):
        point = Fraction(k, 16)
        assert y.eval(point) == x.eval(swap.apply(point))


def test_translation_doc_round_trip():
    phi = make_translation([(0, Q, H), (Q, H, -Q)])
    doc = translation_doc(phi)
    assert doc == [["0", "1/4", "1/2"], ["1/4", "1/2", "-1/4"]]
    assert parse_translation(doc) == phi
    with pytest.raises(InputError):
        parse_translation([["0", "1/2"]])
    with pytest.raises(InputError):
        parse_translation({"0": "1/2"})


def test_pair_interval_unions_sweeps_in_order():
    pieces = pair_interval_unions([(0, H), (Fraction(3, 4), 1)],
                                  [(0, Q), (H, 1)])
    assert pieces == [(Fraction(0), Q, Fraction(0)),
                      (Q, H, Q),
                      (Fraction(3, 4), Fraction(1), Fraction(0))]
    with pytest.raises(InternalCheckError):
        pair_interval_unions([(0, H)], [(0, Q)])


def _star_envelopes(legged_star):
    tree = classify(legged_star).tree
    masses = {"lo": {"y0": "1/2", "y2": "1/2"},
              "mid": {"y2": "1/2", "z": "1/2"},
              "hi": {"y0": "1/4", "z": "3/4"}}
    fns = {name: dist_fn(measure(legged_star, m), tree)
           for name, m in masses.items()}
    env1 = envelope_weights(fns["lo"], fns["mid"], tree)
    env2 = envelope_weights(fns["mid"], fns["hi"], tree)
    return tree, fns, env1, env2


def test_sync_bijection_swap_is_exact_inverse(legged_star):
    tree, _, env1, env2 = _star_envelopes(legged_star)
    phi = sync_bijection(env1, env2, tree)
    assert phi.invert() == sync_bijection(env2, env1, tree)
    c = min(env1.value("1"), env2.value("1"))
    assert sum((hi - lo for lo, hi in phi.source_intervals()),
               Fraction(0)) == c


def test_sync_bijection_requires_mutual_interlacing(legged_star):
    tree, _, _, _ = _star_envelopes(legged_star)
    # big's children fill its root, so its lower bound at the root tops
    # small's root value
    big = NodeWeights.from_dict(tree, {"1": 1, "1.0": Fraction(1, 3),
                                       "1.1": Fraction(1, 3),
                                       "1.2": Fraction(1, 3)})
    small = NodeWeights.from_dict(tree, {"1": Fraction(1, 8), "1.0": 0,
                                         "1.1": 0, "1.2": 0})
    assert not mutually_interlaced(big, small, tree)
    with pytest.raises(HypothesisError):
        sync_bijection(big, small, tree)


def test_anchored_bijection_carries_one_transform_to_the_other(legged_star):
    tree, fns, env1, env2 = _star_envelopes(legged_star)
    anchor = fns["mid"]  # both envelopes interlace it
    phi = anchored_sync_bijection(env1, env2, anchor, tree)
    # phi maps the env1 frame onto the env2 frame, so the env2 transform
    # composed with phi reproduces the env1 transform
    carried = compose_step(phi, build_inverse_transform(env2, anchor, tree))
    assert carried == build_inverse_transform(env1, anchor, tree)


def test_anchored_bijection_requires_interlacing(legged_star):
    tree, fns, env1, _ = _star_envelopes(legged_star)
    small = NodeWeights.from_dict(tree, {"1": Fraction(1, 8), "1.0": 0,
                                         "1.1": 0, "1.2": 0})
    # the anchor reaches 1 at the root head, far above small's root value
    with pytest.raises(HypothesisError):
        anchored_sync_bijection(small, env1, fns["lo"], tree)


@st.composite
def star_measure(draw):
    weights = draw(st.lists(st.integers(min_value=0, max_value=6),
                            min_size=5, max_size=5).filter(lambda ws: sum(ws)))
    total = sum(weights)
    return {el: Fraction(k, total) for el, k in
            zip(("y0", "y1", "y2", "y*", "z"), weights) if k}


@given(star_measure(), star_measure(), star_measure())
def test_sync_bijection_symmetry_on_random_stars(m1, m2, m3):
    tree = classify(STAR).tree
    f1, f2, f3 = (dist_fn(measure(STAR, m), tree) for m in (m1, m2, m3))
    try:
        env1 = envelope_weights(f1, f2, tree)
        env2 = envelope_weights(f2, f3, tree)
    except HypothesisError:
        return  # the pointwise envelope is not a weight family here
    if mutually_interlaced(env1, env2, tree):
        phi = sync_bijection(env1, env2, tree)
        assert phi.invert() == sync_bijection(env2, env1, tree)
    else:
        with pytest.raises(HypothesisError):
            sync_bijection(env1, env2, tree)
