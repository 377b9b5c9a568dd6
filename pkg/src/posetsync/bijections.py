"""Piecewise-translation bijections of [0, c) and their recursive
construction for synchronizing two weight families over one path tree.

A piecewise translation shifts finitely many disjoint half-open source
intervals by constant offsets onto disjoint images.  The synchronizing
construction recurses down the tree: child slots are spliced through the
recursion, a middle window maps by the identity, and the two leftover
interval unions (equal total length by the interlacing inequalities) are
matched by the canonical order-preserving sweep.  The sweep's cut points
depend only on cumulative lengths, so swapping the two weight families
yields exactly the inverse map.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .classw import PathTree
from .errors import HypothesisError, InputError, InternalCheckError
from .measures import (DistFn, NodeWeights, ZERO, interlaced,
                       mutually_interlaced)
from .rationals import format_rational, parse_rational
from .transforms import StepMap, make_step_map


@dataclass(frozen=True)
class PiecewiseTranslation:
    pieces: tuple  # ((lo, hi, offset), ...) sorted, disjoint sources

    def __post_init__(self):
        object.__setattr__(self, "_los", [p[0] for p in self.pieces])

    def apply(self, omega: Fraction) -> Fraction:
        omega = Fraction(omega)
        i = bisect_right(self._los, omega) - 1
        if i >= 0:
            lo, hi, off = self.pieces[i]
            if omega < hi:
                return omega + off
        raise InputError(f"point {format_rational(omega)} outside the domain")

    def invert(self) -> "PiecewiseTranslation":
        return make_translation(
            (lo + off, hi + off, -off) for lo, hi, off in self.pieces)

    def source_intervals(self):
        return [(lo, hi) for lo, hi, _ in self.pieces]

    def image_intervals(self):
        return sorted((lo + off, hi + off) for lo, hi, off in self.pieces)


def make_translation(pieces) -> PiecewiseTranslation:
    kept = sorted((p for p in pieces if p[0] < p[1]), key=lambda p: p[0])
    merged = []
    for lo, hi, off in kept:
        if merged and merged[-1][2] == off and merged[-1][1] == lo:
            merged[-1] = (merged[-1][0], hi, off)
        else:
            if merged and lo < merged[-1][1]:
                raise InputError("overlapping source intervals")
            merged.append((lo, hi, off))
    images = sorted((lo + off, hi + off) for lo, hi, off in merged)
    for (_, prev_hi), (nxt_lo, _) in zip(images, images[1:]):
        if nxt_lo < prev_hi:
            raise InputError("overlapping image intervals")
    return PiecewiseTranslation(tuple(merged))


def identity_translation(c: Fraction) -> PiecewiseTranslation:
    return make_translation([(ZERO, c, ZERO)]) if c > 0 else PiecewiseTranslation(())


def compose(first: PiecewiseTranslation,
            second: PiecewiseTranslation) -> PiecewiseTranslation:
    """Apply first, then second.  Every image point of first must lie in
    second's sources."""
    pieces = []
    cuts = [p[0] for p in second.pieces] + [p[1] for p in second.pieces]
    for lo, hi, off in first.pieces:
        points = sorted({lo} | {c - off for c in cuts if lo < c - off < hi} | {hi})
        for a, b in zip(points, points[1:]):
            shifted = a + off
            i = bisect_right(second._los, shifted) - 1
            if i < 0 or shifted >= second.pieces[i][1] or b + off > second.pieces[i][1]:
                raise InputError(
                    "composition undefined: image interval "
                    f"[{format_rational(a + off)}, {format_rational(b + off)}) "
                    "not covered by the second map's domain")
            pieces.append((a, b, off + second.pieces[i][2]))
    return make_translation(pieces)


def compose_step(phi: PiecewiseTranslation, x: StepMap) -> StepMap:
    """The step map omega -> x(phi(omega))."""
    pieces = []
    cuts = x.breakpoints()
    for lo, hi, off in phi.pieces:
        points = sorted({lo} | {c - off for c in cuts if lo < c - off < hi} | {hi})
        for a, b in zip(points, points[1:]):
            pieces.append((a, b, x.eval(a + off)))
    return make_step_map(pieces)


def translation_doc(phi: PiecewiseTranslation) -> list:
    return [[format_rational(lo), format_rational(hi), format_rational(off)]
            for lo, hi, off in phi.pieces]


def parse_translation(doc) -> PiecewiseTranslation:
    if not isinstance(doc, list):
        raise InputError("translation document must be an array of pieces")
    pieces = []
    for row in doc:
        if not isinstance(row, list) or len(row) != 3:
            raise InputError(f"translation piece must be [lo, hi, offset], got {row!r}")
        pieces.append(tuple(parse_rational(v) for v in row))
    return make_translation(pieces)


def pair_interval_unions(sources, images):
    """Order-preserving matching of two disjoint interval unions of equal
    total length: sweep both left to right, always pairing the longest
    sub-intervals that fit."""
    sources = [iv for iv in sorted(sources) if iv[0] < iv[1]]
    images = [iv for iv in sorted(images) if iv[0] < iv[1]]
    total = sum((hi - lo for lo, hi in sources), ZERO)
    if total != sum((hi - lo for lo, hi in images), ZERO):
        raise InternalCheckError("interval unions have different total length")
    pieces = []
    i = j = 0
    s_pos = sources[0][0] if sources else ZERO
    t_pos = images[0][0] if images else ZERO
    while i < len(sources):
        step = min(sources[i][1] - s_pos, images[j][1] - t_pos)
        pieces.append((s_pos, s_pos + step, t_pos - s_pos))
        s_pos += step
        t_pos += step
        if s_pos == sources[i][1]:
            i += 1
            if i < len(sources):
                s_pos = sources[i][0]
        if t_pos == images[j][1]:
            j += 1
            if j < len(images):
                t_pos = images[j][0]
    return pieces


def sync_bijection(w: NodeWeights, v: NodeWeights, tree: PathTree,
                   address="1") -> PiecewiseTranslation:
    """Bijection of [0, min of the two node values) matching the
    w-parameterization to the v-parameterization.

    Requires the two families mutually interlaced.  Child slots map by
    the child's bijection shifted between the two prefix offsets; the
    window between the larger children-total and the smaller node value
    maps by the identity; the leftovers pair by the canonical sweep.
    """
    ok, detail = mutually_interlaced(w, v, tree, witness=True)
    if not ok:
        raise HypothesisError(
            "weight families are not mutually interlaced",
            **{k: format_rational(x) if isinstance(x, Fraction) else x
               for k, x in detail.items()})
    phi = _build_sync(w, v, tree, address)
    _check_bijection(phi, min(w.value(address), v.value(address)))
    return phi


def _build_sync(w, v, tree, address) -> PiecewiseTranslation:
    key = ("sync", w, v, address)
    hit = tree._memo.get(key)
    if hit is not None:
        return hit

    node = tree.nodes[address]
    pieces = []
    leftovers_src, leftovers_img = [], []
    w_off = v_off = ZERO
    for child in node.children:
        sub = _build_sync(w, v, tree, child)
        shift = v_off - w_off
        pieces.extend((lo + w_off, hi + w_off, off + shift)
                      for lo, hi, off in sub.pieces)
        small = min(w.value(child), v.value(child))
        leftovers_src.append((w_off + small, w_off + w.value(child)))
        leftovers_img.append((v_off + small, v_off + v.value(child)))
        w_off += w.value(child)
        v_off += v.value(child)

    lower = max(w_off, v_off)
    upper = min(w.value(address), v.value(address))
    leftovers_src.append((w_off, lower))
    leftovers_img.append((v_off, lower))
    if lower < upper:
        pieces.append((lower, upper, ZERO))
    pieces.extend(pair_interval_unions(leftovers_src, leftovers_img))

    phi = make_translation(pieces)
    tree._memo[key] = phi
    return phi


def anchored_sync_bijection(w: NodeWeights, v: NodeWeights, f: DistFn,
                            tree: PathTree, address="1") -> PiecewiseTranslation:
    """Bijection of [0, f(head)) matching the w- to the v-parameterization
    relative to one shared distribution function both families interlace.

    Child slots span [0, f(child head)) each; the window between f(tail)
    and f(head) maps by the identity; the leftovers are exactly the two
    tail preimages and pair by the canonical sweep.
    """
    for name, fam in (("first", w), ("second", v)):
        ok, detail = interlaced(fam, f, tree, witness=True)
        if not ok:
            raise HypothesisError(
                f"{name} weight family does not interlace the anchor function",
                **{k: format_rational(x) if isinstance(x, Fraction) else x
                   for k, x in detail.items()})
    phi = _build_anchored(w, v, f, tree, address)
    _check_bijection(phi, dict(f.values)[tree.nodes[address].head])
    return phi


def _build_anchored(w, v, f, tree, address) -> PiecewiseTranslation:
    key = ("anchored", w, v, f, address)
    hit = tree._memo.get(key)
    if hit is not None:
        return hit

    node = tree.nodes[address]
    fv = dict(f.values)
    pieces = []
    leftovers_src, leftovers_img = [], []
    w_off = v_off = ZERO
    for child in node.children:
        sub = _build_anchored(w, v, f, tree, child)
        shift = v_off - w_off
        pieces.extend((lo + w_off, hi + w_off, off + shift)
                      for lo, hi, off in sub.pieces)
        window = fv[tree.nodes[child].head]
        leftovers_src.append((w_off + window, w_off + w.value(child)))
        leftovers_img.append((v_off + window, v_off + v.value(child)))
        w_off += w.value(child)
        v_off += v.value(child)

    leftovers_src.append((w_off, fv[node.tail]))
    leftovers_img.append((v_off, fv[node.tail]))
    if fv[node.tail] < fv[node.head]:
        pieces.append((fv[node.tail], fv[node.head], ZERO))
    pieces.extend(pair_interval_unions(leftovers_src, leftovers_img))

    phi = make_translation(pieces)
    tree._memo[key] = phi
    return phi


def _check_bijection(phi: PiecewiseTranslation, c: Fraction):
    for name, intervals in (("source", phi.source_intervals()),
                            ("image", phi.image_intervals())):
        cursor = ZERO
        for lo, hi in sorted(intervals):
            if lo != cursor:
                raise InternalCheckError(
                    f"{name} intervals leave a gap at {format_rational(cursor)}")
            cursor = hi
        if cursor != c:
            raise InternalCheckError(
                f"{name} intervals end at {format_rational(cursor)}, "
                f"expected {format_rational(c)}")
