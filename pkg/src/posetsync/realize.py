"""Constructing explicit monotone realizations.

A monotone system assigns a probability measure on a Class-W target
poset to every element of an index poset, pairwise stochastically
ordered along the index order.  A realization is one random seed driving
a step map per index element, pointwise ordered whenever the indices
are.  Two construction families are implemented: a single weight family
interlacing every distribution function at once (index poset bounded
below/above, or an up-down target), and the synchronized route that
transports one inverse transform along spanning-tree paths through
recursive synchronizing bijections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bijections import compose_step, sync_bijection
from .classw import WClass, classify, lower_star_class, upper_star_class
from .errors import HypothesisError, InputError
from .measures import (Measure, NodeWeights, ONE, dist_fn, envelope_weights,
                       head_weights, measure_doc, parse_measure, stoch_leq)
from .poset import Poset, parse_poset, poset_doc
from .sync import (MAXIMALS, MINIMALS, is_synchronizable, path_composition,
                   product_graph, shortest_path_vertices, tree_path_vertices)
from .transforms import (StepMap, build_inverse_transform, parse_step_map,
                         pushforward, step_map_doc)


@dataclass(frozen=True)
class MonotoneSystem:
    index_poset: Poset
    target_poset: Poset
    measures: tuple  # ((index element, Measure), ...) in index order

    @classmethod
    def from_measures(cls, index_poset, target_poset, measures: dict):
        rows = []
        for g in index_poset.elements:
            if g not in measures:
                raise InputError(f"no measure given for index {g!r}")
            mu = measures[g]
            if mu.poset != target_poset:
                raise InputError(
                    f"measure for index {g!r} lives on the wrong poset")
            if mu.total() != ONE:
                raise InputError(
                    f"measure for index {g!r} is not a probability measure")
            rows.append((g, mu))
        extra = set(measures) - set(index_poset.elements)
        if extra:
            raise InputError(
                f"measures given for unknown indices {sorted(extra)}")
        return cls(index_poset, target_poset, tuple(rows))

    def measure(self, g) -> Measure:
        return dict(self.measures)[g]

    def measure_map(self) -> dict:
        return dict(self.measures)


def parse_system(doc) -> MonotoneSystem:
    if not isinstance(doc, dict):
        raise InputError("system document must be an object")
    for field in ("index_poset", "target_poset", "measures"):
        if field not in doc:
            raise InputError(f"system document is missing {field!r}")
    index_poset = parse_poset(doc["index_poset"])
    target_poset = parse_poset(doc["target_poset"])
    raw = doc["measures"]
    if not isinstance(raw, dict):
        raise InputError("system measures must be an object keyed by index")
    measures = {g: parse_measure(m, target_poset) for g, m in raw.items()}
    return MonotoneSystem.from_measures(index_poset, target_poset, measures)


def system_doc(sys: MonotoneSystem) -> dict:
    return {
        "index_poset": poset_doc(sys.index_poset),
        "target_poset": poset_doc(sys.target_poset),
        "measures": {g: measure_doc(m) for g, m in sys.measures},
    }


def check_monotone(sys: MonotoneSystem, witness=False, cap_upsets=20):
    """Stochastic monotonicity along the index order; covers suffice by
    transitivity of the stochastic order."""
    for lo, hi in sys.index_poset.covers:
        ok, detail = stoch_leq(sys.measure(lo), sys.measure(hi),
                               cap_elements=cap_upsets, witness=True)
        if not ok:
            if witness:
                return False, {"lower": lo, "upper": hi, "witness": detail}
            return False
    return (True, None) if witness else True


@dataclass(frozen=True)
class Realization:
    system: MonotoneSystem
    maps: tuple  # ((index element, StepMap), ...) in index order

    def map_for(self, g) -> StepMap:
        return dict(self.maps)[g]


def realization_doc(r: Realization) -> dict:
    return {g: step_map_doc(m) for g, m in r.maps}


def parse_realization(doc, sys: MonotoneSystem) -> Realization:
    if not isinstance(doc, dict):
        raise InputError("realization document must be an object")
    maps = []
    for g in sys.index_poset.elements:
        if g not in doc:
            raise InputError(f"realization is missing a map for index {g!r}")
        maps.append((g, parse_step_map(doc[g])))
    return Realization(sys, tuple(maps))


def _require_monotone(sys: MonotoneSystem):
    ok, detail = check_monotone(sys, witness=True)
    if not ok:
        raise HypothesisError(
            "system is not stochastically monotone", **detail)


def _target_tree(sys: MonotoneSystem):
    cls = classify(sys.target_poset)
    if cls.tag not in WClass.TRACTABLE:
        raise HypothesisError(
            f"target poset is outside Class W ({cls.tag})", tag=cls.tag)
    return cls


def _bounded_weights(sys: MonotoneSystem, cls):
    """Weight family of the applicable bounded case, or None.

    Tried in order: index poset bounded on both sides (envelope of the
    extreme distribution functions), bounded below with a lower-star
    target, bounded above with an upper-star target, then the up-down
    target where a single unit weight works for any index poset.
    """
    tree = cls.tree
    bottom = sys.index_poset.bottom()
    top = sys.index_poset.top()
    if bottom is not None and top is not None:
        return envelope_weights(dist_fn(sys.measure(bottom), tree),
                                dist_fn(sys.measure(top), tree), tree)
    if bottom is not None and lower_star_class(cls.tag):
        return head_weights(dist_fn(sys.measure(bottom), tree), tree)
    if top is not None and upper_star_class(cls.tag):
        return head_weights(dist_fn(sys.measure(top), tree), tree)
    if cls.tag == WClass.UP_DOWN:
        return NodeWeights.from_dict(tree, {"1": Fraction(1)})
    return None


def realize_bounded(sys: MonotoneSystem) -> Realization:
    _require_monotone(sys)
    cls = _target_tree(sys)
    weights = _bounded_weights(sys, cls)
    if weights is None:
        raise HypothesisError(
            "no bounded-case hypothesis applies",
            reason="unbounded_index_poset", target_class=cls.tag)
    tree = cls.tree
    maps = tuple(
        (g, build_inverse_transform(weights, dist_fn(mu, tree), tree))
        for g, mu in sys.measures)
    return Realization(sys, maps)


def _dualize(sys: MonotoneSystem) -> MonotoneSystem:
    index_dual = sys.index_poset.dual()
    target_dual = sys.target_poset.dual()
    measures = {g: Measure.from_dict(target_dual,
                                     {x: m.value(x) for x in m.support()})
                for g, m in sys.measures}
    return MonotoneSystem.from_measures(index_dual, target_dual, measures)


def realize_sync(sys: MonotoneSystem, base=None, route=None) -> Realization:
    """Synchronized construction.  route selects a branch explicitly:
    "product" (both directions synchronizable), "single" (minimals
    synchronizable, lower-star target), "dual" (maximals synchronizable,
    upper-star target); None tries them in that order."""
    _require_monotone(sys)
    cls = _target_tree(sys)
    lower = is_synchronizable(sys.index_poset, MINIMALS)
    upper = is_synchronizable(sys.index_poset, MAXIMALS)
    if route not in (None, "product", "single", "dual"):
        raise InputError(f"unknown route {route!r}")
    can = {
        "product": lower.synchronizable and upper.synchronizable,
        "single": lower.synchronizable and lower_star_class(cls.tag),
        "dual": upper.synchronizable and upper_star_class(cls.tag),
    }
    pick = route if route else next(
        (r for r in ("product", "single", "dual") if can[r]), None)
    if pick is None or not can[pick]:
        raise HypothesisError(
            "index poset is not synchronizable in any applicable direction",
            reason="not_synchronizable", route=route,
            minimals=lower.synchronizable, maximals=upper.synchronizable,
            target_class=cls.tag)
    if pick == "product":
        return _realize_product(sys, cls, lower, upper, base)
    if pick == "single":
        return _realize_single(sys, cls, lower, base)
    flipped = _realize_single(_dualize(sys), classify(sys.target_poset.dual()),
                              is_synchronizable(sys.index_poset.dual(),
                                                MINIMALS), base)
    return Realization(sys, flipped.maps)


def _realize_product(sys, cls, lower, upper, base) -> Realization:
    """Both directions synchronizable: transport along the product of
    the two spanning trees.  Each index element takes the smallest
    admissible (minimal, maximal) sandwich in vertex order."""
    tree = cls.tree
    poset = sys.index_poset
    graph = product_graph(poset, lower.tree, upper.tree)
    if base is None:
        base = graph.vertices[0]
    elif base not in graph.vertices:
        raise InputError(f"base vertex {base!r} is not in the product graph")
    fns = {g: dist_fn(mu, tree) for g, mu in sys.measures}
    env = {(a, b): envelope_weights(fns[a], fns[b], tree)
           for a, b in graph.vertices}

    def edge_rsb(v, w):
        return sync_bijection(env[v], env[w], tree)

    maps = []
    for g in poset.elements:
        vertex = next((a, b) for a, b in graph.vertices
                      if poset.leq(a, g) and poset.leq(g, b))
        transform = build_inverse_transform(env[vertex], fns[g], tree)
        path = shortest_path_vertices(graph, base, vertex)
        phi = path_composition(path, edge_rsb)
        maps.append((g, transform if phi is None
                     else compose_step(phi, transform)))
    return Realization(sys, tuple(maps))


def _realize_single(sys, cls, report, base) -> Realization:
    """One synchronizable direction with a matching star-class target:
    transport along the single spanning tree on the minimals."""
    tree = cls.tree
    poset = sys.index_poset
    vertices = report.graph.vertices
    if base is None:
        base = vertices[0]
    elif base not in vertices:
        raise InputError(f"base vertex {base!r} is not a tree vertex")
    fns = {g: dist_fn(mu, tree) for g, mu in sys.measures}
    heads = {a: head_weights(fns[a], tree) for a in vertices}

    def edge_rsb(v, w):
        return sync_bijection(heads[v], heads[w], tree)

    maps = []
    for g in poset.elements:
        anchor = next(a for a in vertices if poset.leq(a, g))
        transform = build_inverse_transform(heads[anchor], fns[g], tree)
        path = tree_path_vertices(report.tree, base, anchor)
        phi = path_composition(path, edge_rsb)
        maps.append((g, transform if phi is None
                     else compose_step(phi, transform)))
    return Realization(sys, tuple(maps))


def realize(sys: MonotoneSystem, base=None) -> Realization:
    """Bounded construction when a bounded case applies, otherwise the
    synchronized construction."""
    _require_monotone(sys)
    cls = _target_tree(sys)
    weights = _bounded_weights(sys, cls)
    if weights is not None:
        tree = cls.tree
        maps = tuple(
            (g, build_inverse_transform(weights, dist_fn(mu, tree), tree))
            for g, mu in sys.measures)
        return Realization(sys, maps)
    return realize_sync(sys, base)


def verify_realization(sys: MonotoneSystem, r: Realization) -> dict:
    """Exact marginals plus exhaustive pointwise monotonicity over the
    merged breakpoints of each comparable pair."""
    target = sys.target_poset
    marginal_failures = []
    for g, mu in sys.measures:
        got = pushforward(r.map_for(g), target)
        if got != mu:
            marginal_failures.append({
                "index": g,
                "expected": measure_doc(mu),
                "got": measure_doc(got),
            })
    violation = None
    for lo, hi in sys.index_poset.comparable_pairs():
        ma, mb = r.map_for(lo), r.map_for(hi)
        points = sorted(set(ma.breakpoints()) | set(mb.breakpoints()))[:-1]
        for omega in points:
            va, vb = ma.eval(omega), mb.eval(omega)
            if not target.leq(va, vb):
                violation = {"lower": lo, "upper": hi, "omega": omega,
                             "lower_value": va, "upper_value": vb}
                break
        if violation:
            break
    ok = not marginal_failures and violation is None
    return {"ok": ok,
            "marginals_ok": not marginal_failures,
            "marginal_failures": marginal_failures,
            "monotone_ok": violation is None,
            "violation": violation}
