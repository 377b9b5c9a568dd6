"""Measures on posets, distribution functions, and branching-node weights.

A distribution function accumulates a measure over the rooted sections
of a path tree.  Two distribution functions compare pointwise, with the
direction of each comparison set by whether the section at that element
is an up-set or a down-set; for probability measures on the tractable
classes this agrees with comparing all up-sets directly, and both routes
are implemented independently.

Node weights assign a value to every path-tree address.  They are valid
when each node's value dominates the sum over its children, and they
interlace a distribution function when additionally the node value
brackets the function's values along the node's path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classw import PathTree
from .errors import HypothesisError, InputError
from .poset import Poset
from .rationals import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Measure:
    poset: Poset
    mass: tuple  # ((element, Fraction), ...) over all elements, canonical order

    @classmethod
    def from_dict(cls, poset: Poset, masses: dict) -> "Measure":
        for x in masses:
            if x not in poset.index:
                raise InputError(f"mass on unknown element {x!r}")
        items = []
        for x in poset.elements:
            m = Fraction(masses.get(x, 0))
            if m < 0:
                raise InputError(f"negative mass {m} on {x!r}")
            items.append((x, m))
        return cls(poset, tuple(items))

    def value(self, x) -> Fraction:
        return self.mass[self.poset.index[x]][1]

    def total(self) -> Fraction:
        return sum((m for _, m in self.mass), ZERO)

    def support(self):
        return [x for x, m in self.mass if m > 0]

    def mass_of_mask(self, mask: int) -> Fraction:
        return sum((m for i, (_, m) in enumerate(self.mass) if mask >> i & 1),
                   ZERO)

    def is_probability(self) -> bool:
        return self.total() == ONE


def parse_measure(doc, poset: Poset) -> Measure:
    if not isinstance(doc, dict) or "mass" not in doc:
        raise InputError('measure document needs a "mass" object')
    if not isinstance(doc["mass"], dict):
        raise InputError('"mass" must map elements to rationals')
    return Measure.from_dict(
        poset, {x: parse_rational(v) for x, v in doc["mass"].items()})


def measure_doc(m: Measure) -> dict:
    return {"mass": {x: format_rational(v) for x, v in m.mass if v != 0}}


# -- distribution functions ------------------------------------------------

@dataclass(frozen=True)
class DistFn:
    """Values of a measure accumulated over rooted sections.

    f(x) is the mass of the section at x; fminus(x) excludes x itself.
    c is the total mass, the value at the root.
    """
    values: tuple   # ((element, Fraction), ...), canonical order
    minus: tuple
    c: Fraction

    def f(self, x) -> Fraction:
        return dict(self.values)[x]

    def fminus(self, x) -> Fraction:
        return dict(self.minus)[x]


def dist_fn(measure: Measure, tree: PathTree) -> DistFn:
    if measure.poset is not tree.poset and measure.poset != tree.poset:
        raise InputError("measure and tree live on different posets")
    values, minus = [], []
    for x in measure.poset.elements:
        total = measure.mass_of_mask(tree.section_mask(x))
        values.append((x, total))
        minus.append((x, total - measure.value(x)))
    return DistFn(tuple(values), tuple(minus), dict(values)[tree.root])


def df_leq(f: DistFn, g: DistFn, tree: PathTree, witness=False):
    """Sectionwise order: at down-set sections f dominates, at up-set
    sections g dominates, where both kinds hold the values must agree."""
    fv, gv = dict(f.values), dict(g.values)
    for x in tree.poset.elements:
        kind = tree.section_kind(x)
        ok = True
        if kind in ("down", "both") and fv[x] < gv[x]:
            ok = False
        if kind in ("up", "both") and fv[x] > gv[x]:
            ok = False
        if not ok:
            if witness:
                return False, {"element": x, "kind": kind,
                               "left": fv[x], "right": gv[x]}
            return False
    return (True, None) if witness else True


def stoch_leq(p: Measure, q: Measure, cap_elements=20, witness=False):
    """p below q: every up-set gets at least as much q-mass as p-mass.

    Enumerates up-sets; beyond the element cap it falls back to the
    max-flow coupling oracle (which cannot produce an up-set witness).
    """
    if p.poset != q.poset:
        raise InputError("measures live on different posets")
    if p.total() != q.total():
        raise InputError("measures have different totals",
                         left=format_rational(p.total()),
                         right=format_rational(q.total()))
    if len(p.poset.elements) > cap_elements:
        from .oracle import strassen_pair
        ok = strassen_pair(p, q) is not None
        return (ok, None) if witness else ok
    for mask in p.poset.up_set_masks(cap_elements):
        if p.mass_of_mask(mask) > q.mass_of_mask(mask):
            if witness:
                return False, {"up_set": p.poset.labels_of(mask)}
            return False
    return (True, None) if witness else True


# -- node weights ----------------------------------------------------------

@dataclass(frozen=True)
class NodeWeights:
    """A value per path-tree address; valid when each node dominates the
    sum of its children (the node's lower weight)."""
    values: tuple  # ((address, Fraction), ...) sorted by address

    @classmethod
    def from_dict(cls, tree: PathTree, mapping: dict) -> "NodeWeights":
        missing = [a for a in tree.addresses if a not in mapping]
        extra = [a for a in mapping if a not in tree.nodes]
        if missing or extra:
            raise InputError("node weights do not match the tree",
                             missing=missing, extra=extra)
        items = tuple(sorted(((a, Fraction(v)) for a, v in mapping.items())))
        w = cls(items)
        bad = w._first_invalid(tree)
        if bad is not None:
            addr, value, lower = bad
            raise HypothesisError(
                f"node weight at {addr} is {format_rational(value)}, below its "
                f"children's total {format_rational(lower)}",
                address=addr, value=format_rational(value),
                lower=format_rational(lower))
        return w

    def value(self, address) -> Fraction:
        return dict(self.values)[address]

    def lower(self, address, tree: PathTree) -> Fraction:
        """Sum over the node's children."""
        vals = dict(self.values)
        return sum((vals[c] for c in tree.nodes[address].children), ZERO)

    def _first_invalid(self, tree):
        vals = dict(self.values)
        for addr in tree.addresses:
            if vals[addr] < 0:
                return addr, vals[addr], ZERO
            low = self.lower(addr, tree)
            if vals[addr] < low:
                return addr, vals[addr], low
        return None

    def prefix_below(self, address, tree: PathTree, child_index: int) -> Fraction:
        """Sum of the weights of the children strictly left of child_index."""
        vals = dict(self.values)
        kids = tree.nodes[address].children
        return sum((vals[c] for c in kids[:child_index]), ZERO)


def weights_doc(w: NodeWeights) -> dict:
    return {a: format_rational(v) for a, v in w.values}


def parse_weights(doc, tree: PathTree) -> NodeWeights:
    if not isinstance(doc, dict):
        raise InputError("node weights document must be an object")
    return NodeWeights.from_dict(
        tree, {a: parse_rational(v) for a, v in doc.items()})


def interlaced(w: NodeWeights, f: DistFn, tree: PathTree, witness=False):
    """Weights interlace a distribution function when the root weight is
    the total mass and every node's value brackets the function along
    its path: children-total <= f(tail) <= f(head) <= node value."""
    vals = dict(w.values)
    fv = dict(f.values)
    for addr in tree.addresses:
        node = tree.nodes[addr]
        checks = [
            ("lower_vs_tail", w.lower(addr, tree), fv[node.tail]),
            ("tail_vs_head", fv[node.tail], fv[node.head]),
            ("head_vs_value", fv[node.head], vals[addr]),
        ]
        for name, lo, hi in checks:
            if lo > hi:
                detail = {"address": addr, "check": name,
                          "left": lo, "right": hi}
                return (False, detail) if witness else False
    if vals["1"] != f.c:
        detail = {"address": "1", "check": "root_vs_total",
                  "left": vals["1"], "right": f.c}
        return (False, detail) if witness else False
    return (True, None) if witness else True


def mutually_interlaced(w: NodeWeights, v: NodeWeights, tree: PathTree,
                        witness=False):
    """Both families fit through the same gaps: at every node the larger
    children-total stays below the smaller node value."""
    for addr in tree.addresses:
        lo = max(w.lower(addr, tree), v.lower(addr, tree))
        hi = min(w.value(addr), v.value(addr))
        if lo > hi:
            detail = {"address": addr, "left": lo, "right": hi}
            return (False, detail) if witness else False
    return (True, None) if witness else True


def envelope_weights(fa: DistFn, fb: DistFn, tree: PathTree) -> NodeWeights:
    """Per-node upper envelope of two distribution functions at path
    heads.  Raises a structured error when the result is not a valid
    weight family (which signals the two functions are not ordered
    around a common one)."""
    fav, fbv = dict(fa.values), dict(fb.values)
    mapping = {addr: max(fav[tree.nodes[addr].head], fbv[tree.nodes[addr].head])
               for addr in tree.addresses}
    return NodeWeights.from_dict(tree, mapping)


def head_weights(f: DistFn, tree: PathTree) -> NodeWeights:
    """A single distribution function's values at path heads."""
    fv = dict(f.values)
    mapping = {addr: fv[tree.nodes[addr].head] for addr in tree.addresses}
    return NodeWeights.from_dict(tree, mapping)


def extended_values(f: DistFn, tree: PathTree, address, w: NodeWeights) -> dict:
    """The distribution function on a node's subtree, extended upward by
    one element: the attach element above the node carries the node's
    weight.  At the root there is nothing to attach and the values are
    returned unchanged."""
    fv = dict(f.values)
    node = tree.nodes[address]
    out = {}

    def collect(addr):
        for x in tree.nodes[addr].path:
            out[x] = fv[x]
        for child in tree.nodes[addr].children:
            collect(child)

    collect(address)
    if address != "1":
        out[tree.attach_element(address)] = w.value(address)
    return out
