"""Shared fixtures: the small posets every module exercises.

Each fixture is built from its covering relations right here, so tests
never depend on generator code for their inputs.
"""

from fractions import Fraction

import pytest

from posetsync.measures import Measure
from posetsync.poset import Poset


@pytest.fixture
def chain2():
    return Poset.from_relations(["lo", "hi"], [("lo", "hi")])


@pytest.fixture
def chain3():
    return Poset.from_relations(["lo", "mid", "hi"],
                                [("lo", "mid"), ("mid", "hi")])


@pytest.fixture
def y_branch_up():
    """Two minimal elements joined below an interior point with one
    element above it; the interior branch point is neither minimal nor
    maximal."""
    return Poset.from_relations(
        ["left", "right", "mid", "top"],
        [("left", "mid"), ("right", "mid"), ("mid", "top")])


@pytest.fixture
def y_branch_down():
    """Mirror image: the branch opens upward from an interior point."""
    return Poset.from_relations(
        ["bottom", "mid", "left", "right"],
        [("bottom", "mid"), ("mid", "left"), ("mid", "right")])


@pytest.fixture
def claw_bottom_hub():
    """One minimal hub below three maximal spokes."""
    return Poset.from_relations(
        ["hub", "s0", "s1", "s2"],
        [("hub", "s0"), ("hub", "s1"), ("hub", "s2")])


@pytest.fixture
def claw_top_hub():
    """Three minimal spokes below one maximal hub."""
    return Poset.from_relations(
        ["s0", "s1", "s2", "hub"],
        [("s0", "hub"), ("s1", "hub"), ("s2", "hub")])


@pytest.fixture
def legged_star():
    """Four minimal legs under one top: the smallest target the
    counterexample construction emits (two labelled feet)."""
    return Poset.from_relations(
        ["y0", "y1", "y2", "y*", "z"],
        [("y0", "z"), ("y1", "z"), ("y2", "z"), ("y*", "z")])


@pytest.fixture
def triple_bridge():
    """Three bottoms and three tops; the middle bottom sits under every
    top, so the middle pair of bound-graph edges can share a tree."""
    return Poset.from_relations(
        ["b0", "b1", "b2", "t0", "t1", "t2"],
        [("b0", "t0"), ("b0", "t1"), ("b1", "t0"), ("b1", "t1"),
         ("b1", "t2"), ("b2", "t1"), ("b2", "t2")])


@pytest.fixture
def hexagon():
    """Six-cycle Hasse diagram: three bottoms, three tops, each bottom
    under exactly two tops.  The smallest non-synchronizable poset."""
    return Poset.from_relations(
        ["b0", "b1", "b2", "t0", "t1", "t2"],
        [("b0", "t0"), ("b0", "t1"), ("b1", "t0"), ("b1", "t2"),
         ("b2", "t1"), ("b2", "t2")])


@pytest.fixture
def crown44():
    """Standard four-dimensional poset: four bottoms, four tops, each
    bottom incomparable to exactly one partner top."""
    return Poset.from_relations(
        ["b1", "b0", "bs1", "bs2", "a0", "a11", "a12", "a2"],
        [("b1", "a11"), ("b1", "a12"), ("b1", "a2"),
         ("b0", "a0"), ("b0", "a11"), ("b0", "a12"),
         ("bs1", "a0"), ("bs1", "a12"), ("bs1", "a2"),
         ("bs2", "a0"), ("bs2", "a11"), ("bs2", "a2")])


@pytest.fixture
def bowtie_index():
    """Two minimals below two maximals, all four cross pairs related;
    its product graph is a four-cycle."""
    return Poset.from_relations(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def frac(text):
    return Fraction(text)


def measure(poset, masses):
    return Measure.from_dict(poset, {x: Fraction(v) for x, v in
                                     masses.items()})


@pytest.fixture
def chain3_measures(chain3):
    low = measure(chain3, {"lo": "1/2", "mid": "1/4", "hi": "1/4"})
    high = measure(chain3, {"lo": "1/4", "mid": "1/4", "hi": "1/2"})
    return low, high
