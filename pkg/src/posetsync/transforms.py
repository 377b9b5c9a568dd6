"""Inverse-transform sampling maps for measures on tree-shaped posets.

A step map sends the half-open interval [0, c) onto poset elements by
half-open constant pieces; ties at a breakpoint always belong to the
right piece.  The recursive construction splices the child nodes'
transforms over the children's weight slots and finishes the node's own
path with a classical inverse-distribution sweep over the remaining
window.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .classw import PathTree
from .errors import HypothesisError, InputError, InternalCheckError
from .measures import DistFn, Measure, NodeWeights, ZERO, interlaced
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class StepMap:
    """Piecewise-constant map on [0, c); pieces tile the domain exactly."""
    pieces: tuple   # ((lo, hi, element), ...) contiguous from 0
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "_los", [p[0] for p in self.pieces])

    def eval(self, omega: Fraction):
        omega = Fraction(omega)
        if omega < 0 or omega >= self.c:
            raise InputError(
                f"sample point {format_rational(omega)} outside [0, "
                f"{format_rational(self.c)})")
        i = bisect_right(self._los, omega) - 1
        return self.pieces[i][2]

    def breakpoints(self):
        return [p[0] for p in self.pieces] + [self.c]


def make_step_map(pieces, c=None) -> StepMap:
    """Canonicalize: sort, drop empty pieces, merge equal neighbours,
    and require the result to tile [0, c) with no gaps."""
    kept = sorted((p for p in pieces if p[0] < p[1]), key=lambda p: p[0])
    merged = []
    for lo, hi, val in kept:
        if merged and merged[-1][2] == val and merged[-1][1] == lo:
            merged[-1] = (merged[-1][0], hi, val)
        else:
            merged.append((lo, hi, val))
    if c is None:
        c = merged[-1][1] if merged else ZERO
    cursor = ZERO
    for lo, hi, _ in merged:
        if lo != cursor:
            raise InternalCheckError(
                f"step map pieces leave a gap at {format_rational(cursor)}")
        cursor = hi
    if cursor != c:
        raise InternalCheckError(
            f"step map pieces end at {format_rational(cursor)}, "
            f"domain is [0, {format_rational(c)})")
    return StepMap(tuple(merged), c)


def step_map_doc(x: StepMap) -> list:
    return [[format_rational(lo), format_rational(hi), val]
            for lo, hi, val in x.pieces]


def parse_step_map(doc) -> StepMap:
    if not isinstance(doc, list):
        raise InputError("step map document must be an array of pieces")
    pieces = []
    for row in doc:
        if not isinstance(row, list) or len(row) != 3:
            raise InputError(f"step map piece must be [lo, hi, element], got {row!r}")
        pieces.append((parse_rational(row[0]), parse_rational(row[1]), row[2]))
    try:
        return make_step_map(pieces)
    except InternalCheckError as err:
        raise InputError(f"step map document is not a tiling: {err}") from err


def build_inverse_transform(w: NodeWeights, f: DistFn, tree: PathTree,
                            address="1") -> StepMap:
    """The sampling map of f guided by the node weights w.

    Requires w to interlace f.  The map at a node covers [0, value(node));
    child slots occupy the children's weights left to right, and the
    remaining window inverts f along the node's own path, topped by the
    attach element above the node.  Memoized per (weights, function, node).
    """
    ok, detail = interlaced(w, f, tree, witness=True)
    if not ok:
        raise HypothesisError("weights do not interlace the distribution function",
                              **{k: format_rational(v) if isinstance(v, Fraction) else v
                                 for k, v in detail.items()})
    return _build_transform(w, f, tree, address)


def _build_transform(w, f, tree, address) -> StepMap:
    key = ("transform", w, f, address)
    hit = tree._memo.get(key)
    if hit is not None:
        return hit

    node = tree.nodes[address]
    fv = dict(f.values)
    pieces = []
    offset = ZERO
    for child in node.children:
        sub = _build_transform(w, f, tree, child)
        pieces.extend((lo + offset, hi + offset, val) for lo, hi, val in sub.pieces)
        offset += w.value(child)

    # Inverse sweep over the node's path, bottom of the rooted order first;
    # the attach element (or the root path's head) closes the window.
    thresholds = [(fv[x], x) for x in reversed(node.path)]
    if address != "1":
        thresholds.append((w.value(address), tree.attach_element(address)))
    cursor = offset  # == children total, the window's left end
    for level, element in thresholds:
        if level > cursor:
            pieces.append((cursor, level, element))
            cursor = level

    result = make_step_map(pieces, c=w.value(address))
    tree._memo[key] = result
    return result


def pushforward(x: StepMap, poset) -> Measure:
    """Length of the preimage of each element, as a measure."""
    masses = {}
    for lo, hi, val in x.pieces:
        masses[val] = masses.get(val, ZERO) + (hi - lo)
    return Measure.from_dict(poset, masses)


def tail_preimage(w: NodeWeights, f: DistFn, tree: PathTree, address):
    """Closed form for the transform's preimage of the node's tail:
    the window right of the children up to f(tail), plus one window per
    child between f(child head) and the child's weight."""
    fv = dict(f.values)
    node = tree.nodes[address]
    intervals = []
    offset = ZERO
    for child in node.children:
        head = tree.nodes[child].head
        lo, hi = offset + fv[head], offset + w.value(child)
        if lo < hi:
            intervals.append((lo, hi))
        offset += w.value(child)
    lo, hi = offset, fv[node.tail]
    if lo < hi:
        intervals.append((lo, hi))
    return sorted(intervals)
