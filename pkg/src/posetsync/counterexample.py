"""Certified counterexamples for non-synchronizable index posets.

When the shared-bound graph on the minimals has no locally connected
spanning tree, monotonicity equivalence fails: there is a stochastically
monotone system over the index poset, targeting a small star-shaped
poset, that no single random seed can realize monotonically.  This
module constructs that system and certifies non-realizability twice
over, by an exact linear-program infeasibility witness and by a
symbolic event argument whose exclusive events carry total probability
above one.

Pipeline: pick the first index element whose minimals disconnect inside
the minimum spanning tree, pick an origin minimal below it with a tree
path leaving and re-entering that down-set, restrict the tree to the
outside minimals plus the origin, enumerate every zigzag fence the
restricted forest supports, select and label the fences with the most
upper companions, partition the index poset into five cells, and read
off one measure formula per cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (CapExceeded, HypothesisError, InputError,
                     InternalCheckError)
from .measures import Measure, stoch_leq
from .oracle import realizably_monotone
from .poset import Poset, poset_doc
from .realize import MonotoneSystem, system_doc
from .rationals import format_rational
from .sync import (MAXIMALS, MINIMALS, SyncReport, sync_reports,
                   tree_path_vertices)

DEFAULT_FENCE_CAP = 4096


# -- pivot, origin and the restricted forest -------------------------------

@dataclass(frozen=True)
class Disconnection:
    pivot: str          # first element whose minimals split in the tree
    below: tuple        # minimals below the pivot, input order
    components: tuple   # the split, each component input-ordered
    origin: str         # first split minimal with an exit-and-return path
    partner: str        # path endpoint, in another component
    path: tuple         # tree path origin .. partner, interior outside
    forest: tuple       # tree edges among (minimals - below) + {origin}


def _tree_components(vertices, edges):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    comps = [tuple(g) for g in groups.values()]
    order = {v: i for i, v in enumerate(vertices)}
    return tuple(sorted(comps, key=lambda c: order[c[0]]))


def find_disconnecting(report: SyncReport) -> Disconnection:
    """Locate the witness structure inside the minimum spanning tree."""
    if report.synchronizable:
        raise InputError("the graph has a locally connected spanning tree; "
                         "nothing disconnects")
    poset = report.graph.poset
    tree = report.tree
    pivot = below = comps = None
    for g in poset.elements:
        down = poset.minimals_below(g)
        inner = [e for e in tree if e[0] in down and e[1] in down]
        parts = _tree_components(down, inner)
        if len(parts) > 1:
            pivot, below, comps = g, tuple(down), parts
            break
    if pivot is None:
        raise InternalCheckError(
            "tree flagged not locally connected but no element disconnects")
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    down_set = set(below)
    order = {v: i for i, v in enumerate(report.graph.vertices)}
    for origin in below:
        candidates = []
        for other in below:
            if comp_of[other] == comp_of[origin]:
                continue
            walk = tree_path_vertices(tree, origin, other)
            if all(v not in down_set for v in walk[1:-1]):
                candidates.append((len(walk) - 1, order[other], other, walk))
        if candidates:
            _, _, partner, walk = min(candidates)
            keep = {v for v in report.graph.vertices
                    if v not in down_set} | {origin}
            forest = tuple(e for e in tree if e[0] in keep and e[1] in keep)
            return Disconnection(pivot, tuple(below), comps, origin, partner,
                                 tuple(walk), forest)
    raise InternalCheckError(
        "no split minimal has an exit-and-return tree path")


# -- fences ----------------------------------------------------------------

@dataclass(frozen=True)
class Fence:
    """A zigzag b_0 < a_1 > b_1 < ... < a_{l+1} > far whose induced
    subposet carries exactly those comparabilities."""
    bottoms: tuple   # (b_0, ..., b_l), l >= 1
    tops: tuple      # (a_1, ..., a_{l+1})
    far: str         # the far bottom, a minimal below the pivot
    support: tuple   # forest path carrying the bottoms in order

    @property
    def rungs(self):
        return len(self.bottoms) - 1

    def sequence(self):
        out = []
        for b, a in zip(self.bottoms, self.tops):
            out.extend((b, a))
        out.append(self.far)
        return tuple(out)


def fence_doc(f: Fence) -> dict:
    return {"bottoms": list(f.bottoms), "tops": list(f.tops), "far": f.far,
            "support_path": list(f.support)}


def is_fence(poset: Poset, bottoms, tops, far) -> bool:
    """Exact comparability pattern of the zigzag, nothing more."""
    elems = tuple(bottoms) + tuple(tops) + (far,)
    if len(set(elems)) != len(elems):
        return False
    if len(tops) != len(bottoms) or len(bottoms) < 2:
        return False
    required = set()
    for i, a in enumerate(tops):
        lower = bottoms[i + 1] if i + 1 < len(bottoms) else far
        required.add((bottoms[i], a))
        required.add((lower, a))
    for x, y in itertools.combinations(elems, 2):
        expected = (x, y) in required or (y, x) in required
        if poset.comparable(x, y) != expected:
            return False
    for x, y in required:
        if not poset.lt(x, y):
            return False
    return True


def _forest_paths(adj, origin, order):
    """Simple paths of length >= 1 from the origin, depth first with
    neighbours visited in input order."""
    path = [origin]
    on_path = {origin}

    def walk():
        for v in sorted(adj.get(path[-1], ()), key=order.get):
            if v in on_path:
                continue
            path.append(v)
            on_path.add(v)
            yield tuple(path)
            yield from walk()
            on_path.discard(path.pop())

    yield from walk()


def enumerate_fences(poset: Poset, disc: Disconnection,
                     cap_fences=DEFAULT_FENCE_CAP) -> tuple:
    """Every fence the restricted forest supports, in a fixed order:
    by forest path, then bottom subsequence, then tops left to right,
    then the far bottom, each choice in input order."""
    order = {x: i for i, x in enumerate(poset.elements)}
    adj = {}
    for u, v in disc.forest:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    far_pool = [b for b in disc.below if b != disc.origin]
    fences = []

    def place_tops(bottoms, support, tops):
        i = len(tops)
        if i == len(bottoms) - 1:
            for top in poset.elements:
                if not poset.lt(bottoms[-1], top):
                    continue
                for far in far_pool:
                    if not poset.lt(far, top):
                        continue
                    cand = Fence(bottoms, tops + (top,), far, support)
                    if is_fence(poset, cand.bottoms, cand.tops, cand.far):
                        fences.append(cand)
                        if len(fences) > cap_fences:
                            raise CapExceeded(
                                f"more than {cap_fences} fences",
                                cap=cap_fences)
            return
        for top in poset.elements:
            if poset.lt(bottoms[i], top) and poset.lt(bottoms[i + 1], top):
                place_tops(bottoms, support, tops + (top,))

    for support in _forest_paths(adj, disc.origin, order):
        interior = support[1:-1]
        for size in range(len(interior) + 1):
            for picks in itertools.combinations(range(len(interior)), size):
                bottoms = ((disc.origin,)
                           + tuple(interior[i] for i in picks)
                           + (support[-1],))
                place_tops(bottoms, support, ())
    return tuple(fences)


# -- selection, labels and the five-cell partition -------------------------

@dataclass(frozen=True)
class Selection:
    fences: tuple        # the full collection, enumeration order
    counts: tuple        # upper-companion count per fence
    principal: int       # index of the selected fence
    core_tops: tuple     # labelled tops, principal's first
    chosen: tuple        # fence index backing each core top
    far_bottoms: tuple   # distinct far bottoms of the chosen fences
    mid_bottoms: tuple   # interior bottoms of the chosen fences
    high_tops: tuple     # tops beyond the first of the chosen fences

    @property
    def width(self):
        return len(self.core_tops)


def select_fences(poset: Poset, disc: Disconnection, fences) -> Selection:
    if not fences:
        raise InternalCheckError(
            "a disconnected split must support at least one fence")
    counts = tuple(
        sum(1 for other in fences if poset.lt(f.far, other.tops[0]))
        for f in fences)
    principal = counts.index(max(counts))
    first = fences[principal]
    pool = {first.tops[0]}
    pool.update(f.tops[0] for f in fences if poset.lt(first.far, f.tops[0]))
    core = poset.induced(sorted(pool, key=poset.index.get)).minimal_elements()
    if first.tops[0] not in core:
        raise InternalCheckError(
            "the selected fence's first top is not minimal in its pool")
    core_tops = [first.tops[0]] + [c for c in core if c != first.tops[0]]
    chosen = []
    for c in core_tops:
        if c == first.tops[0]:
            chosen.append(principal)
        else:
            chosen.append(next(i for i, f in enumerate(fences)
                               if f.tops[0] == c))
    order = poset.index.get
    far_bottoms, seen = [], set()
    for i in chosen:
        if fences[i].far not in seen:
            seen.add(fences[i].far)
            far_bottoms.append(fences[i].far)
    mid = {b for i in chosen for b in fences[i].bottoms[1:]}
    high = {a for i in chosen for a in fences[i].tops[1:]}
    return Selection(tuple(fences), counts, principal, tuple(core_tops),
                     tuple(chosen), tuple(far_bottoms),
                     tuple(sorted(mid, key=order)),
                     tuple(sorted(high, key=order)))


LOWER_CORE = "lower_core"
UPPER_BRIDGE = "upper_bridge"
UPPER_FREE = "upper_free"
LOWER_BRIDGE = "lower_bridge"
LOWER_FREE = "lower_free"
CELLS = (LOWER_CORE, UPPER_BRIDGE, UPPER_FREE, LOWER_BRIDGE, LOWER_FREE)


def partition_cells(poset: Poset, disc: Disconnection, sel: Selection) -> dict:
    """Five cells: below pivot and every core top; outside the pivot's
    down-set, split by reaching a later top; below the pivot but not
    every core top, split the same way."""
    cells = {name: [] for name in CELLS}
    for g in poset.elements:
        below_pivot = poset.leq(g, disc.pivot)
        below_core = all(poset.leq(g, c) for c in sel.core_tops)
        bridged = any(poset.leq(g, t) for t in sel.high_tops)
        if below_pivot and below_core:
            if bridged:
                raise InternalCheckError(
                    f"{g!r} sits below the pivot, every core top and a "
                    "later top at once; the cells would overlap")
            cells[LOWER_CORE].append(g)
        elif not below_pivot:
            cells[UPPER_BRIDGE if bridged else UPPER_FREE].append(g)
        else:
            cells[LOWER_BRIDGE if bridged else LOWER_FREE].append(g)
    placements = (
        ((disc.origin,), LOWER_CORE),
        (sel.mid_bottoms, UPPER_BRIDGE),
        (sel.high_tops, UPPER_BRIDGE),
        (sel.core_tops, UPPER_FREE),
        (sel.far_bottoms, LOWER_BRIDGE),
        ((disc.pivot,), LOWER_FREE),
    )
    for members, cell in placements:
        for g in members:
            if g not in cells[cell]:
                raise InternalCheckError(
                    f"{g!r} should land in cell {cell} but does not")
    for far in disc.below:
        if far == disc.origin:
            continue
        reaches = sum(1 for c in sel.core_tops if poset.leq(far, c))
        touches_high = any(poset.leq(far, t) for t in sel.high_tops)
        if reaches > sel.width - 1 and touches_high:
            raise InternalCheckError(
                f"split minimal {far!r} reaches every core top and a "
                "later top; the far-bottom bound fails")
    return {name: tuple(members) for name, members in cells.items()}


# -- the target star poset and the measures --------------------------------

def star_labels(n: int):
    return ["y0"] + [f"y{j}" for j in range(1, n + 1)] + ["y*", "z"]


def build_wstar_poset(n: int) -> Poset:
    """n + 3 elements: pairwise incomparable feet under a single head."""
    if n < 1:
        raise InputError("the star target needs at least one labelled foot")
    labels = star_labels(n)
    return Poset.from_relations(labels, [(x, "z") for x in labels[:-1]])


def build_system(poset: Poset, disc: Disconnection, sel: Selection,
                 target: Poset, cells: dict) -> MonotoneSystem:
    """One measure per cell formula, all with denominator width + 1."""
    n = sel.width
    unit = Fraction(1, n + 1)
    foot = {c: f"y{j + 1}" for j, c in enumerate(sel.core_tops)}
    cell_of = {g: name for name, members in cells.items() for g in members}
    measures = {}
    for g in poset.elements:
        reached = [c for c in sel.core_tops if poset.leq(g, c)]
        k = len(reached)
        cell = cell_of[g]
        if cell == LOWER_CORE:
            mass = {"y0": 1}
            for c in sel.core_tops:
                mass[foot[c]] = 1
        elif cell == UPPER_BRIDGE:
            mass = {"y*": 1, "z": n - k}
        elif cell == UPPER_FREE:
            mass = {"z": n + 1 - k}
        elif cell == LOWER_BRIDGE:
            mass = {"y*": 1, "y0": 1, "z": n - 1 - k}
        else:
            mass = {"y0": 1, "z": n - k}
        if cell != LOWER_CORE:
            for c in reached:
                mass[foot[c]] = 1
        if any(v < 0 for v in mass.values()):
            raise InternalCheckError(
                f"negative head weight for {g!r} in cell {cell}")
        if sum(mass.values()) != n + 1:
            raise InternalCheckError(
                f"masses for {g!r} do not add up to one")
        measures[g] = Measure.from_dict(
            target, {x: unit * v for x, v in mass.items() if v})
    return MonotoneSystem.from_measures(poset, target, measures)


# -- the symbolic event certificate ----------------------------------------

@dataclass(frozen=True)
class Event:
    name: str
    value: str     # target element the event pins
    base: str      # index element whose marginal defines the event
    steps: tuple   # ((lower_index, upper_index), ...) transport chain


def build_events(poset: Poset, disc: Disconnection, sel: Selection) -> tuple:
    """The width + 2 exclusive events.

    Each step transports an event between two comparable index elements
    whose marginals pin the same target value with equal mass."""
    fences = sel.fences
    first = fences[sel.principal]
    events = []
    base_steps = [(disc.origin, disc.pivot)]
    base_steps += [(far, disc.pivot) for far in sel.far_bottoms]
    events.append(Event("E0", "y0", disc.origin, tuple(base_steps)))
    events.append(Event("E1", "y1", disc.origin,
                        ((disc.origin, first.tops[0]),
                         (first.bottoms[1], first.tops[0]))))
    zig = [(first.far, first.tops[-1])]
    for i in range(first.rungs, 0, -1):
        zig.append((first.bottoms[i], first.tops[i]))
        zig.append((first.bottoms[i], first.tops[i - 1]))
    zig.pop()  # the last pair would step past the fence's first top
    events.append(Event("E*", "y*", first.far, tuple(zig)))
    for j in range(2, sel.width + 1):
        top = sel.core_tops[j - 1]
        events.append(Event(f"E{j}", f"y{j}", disc.origin,
                            ((disc.origin, top), (first.far, top))))
    return tuple(events)


def check_event_certificate(system: MonotoneSystem, events) -> dict:
    """Replay the certificate from nothing but the system.

    Each transport step needs: the two index elements comparable, the
    pinned value the only support point under itself on the lower side,
    and equal masses on both sides.  Exclusivity needs every event pair
    to share an index element where they pin different values."""
    poset = system.index_poset
    target = system.target_poset
    measures = system.measure_map()
    anchors = {}
    probs = {}
    for ev in events:
        mass = measures[ev.base].value(ev.value)
        if mass <= 0:
            return {"ok": False, "reason": f"{ev.name} has empty base mass"}
        known = {ev.base}
        for lo, hi in ev.steps:
            if not poset.lt(lo, hi):
                return {"ok": False,
                        "reason": f"{ev.name}: {lo!r} not below {hi!r}"}
            down = set(target.principal_down_set(ev.value))
            supp = set(measures[lo].support())
            if down & supp != {ev.value}:
                return {"ok": False,
                        "reason": f"{ev.name}: {ev.value!r} is not the only "
                                  f"support point of {lo!r} under itself"}
            if measures[lo].value(ev.value) != measures[hi].value(ev.value):
                return {"ok": False,
                        "reason": f"{ev.name}: masses differ on {lo!r}, {hi!r}"}
            if lo in known:
                known.add(hi)
            elif hi in known:
                known.add(lo)
            else:
                return {"ok": False,
                        "reason": f"{ev.name}: step ({lo!r}, {hi!r}) touches "
                                  "no anchored element"}
        anchors[ev.name] = known
        probs[ev.name] = mass
    pair_witness = []
    for a, b in itertools.combinations(events, 2):
        shared = [g for g in poset.elements
                  if g in anchors[a.name] and g in anchors[b.name]]
        split = next((g for g in shared), None)
        if split is None:
            return {"ok": False,
                    "reason": f"{a.name} and {b.name} share no element"}
        if a.value == b.value:
            return {"ok": False,
                    "reason": f"{a.name} and {b.name} pin the same value"}
        pair_witness.append({"first": a.name, "second": b.name,
                             "element": split,
                             "values": [a.value, b.value]})
    total = sum(probs.values())
    if total <= 1:
        return {"ok": False,
                "reason": f"exclusive events only reach {total}"}
    return {"ok": True, "total": total, "probabilities": probs,
            "anchors": {k: sorted(v, key=poset.index.get)
                        for k, v in anchors.items()},
            "disjoint": pair_witness}


def event_doc(ev: Event) -> dict:
    return {"name": ev.name, "value": ev.value, "base": ev.base,
            "steps": [[lo, hi] for lo, hi in ev.steps]}


# -- certification and the bundle ------------------------------------------

def certify(system: MonotoneSystem, events, cap_maps=None) -> dict:
    """Monotonicity on every comparable pair, linear-program
    infeasibility, and the replayed event certificate; the two
    non-realizability routes must agree."""
    poset = system.index_poset
    for lo, hi in poset.comparable_pairs():
        ok, why = stoch_leq(system.measure(lo), system.measure(hi),
                            witness=True)
        if not ok:
            raise InternalCheckError(
                f"constructed system is not monotone on ({lo!r}, {hi!r}): "
                f"{why}")
    feasible, detail = realizably_monotone(
        system.index_poset, system.target_poset, system.measure_map(),
        cap_maps=cap_maps)
    replay = check_event_certificate(system, events)
    if feasible or not replay["ok"]:
        raise InternalCheckError(
            "non-realizability certificates disagree with the construction: "
            f"lp_feasible={feasible}, events_ok={replay['ok']}, "
            f"reason={replay.get('reason')}")
    return {"monotone": True, "lp": dict(detail, feasible=False),
            "events": replay}


@dataclass(frozen=True)
class Bundle:
    direction: str
    input_poset: Poset
    report: SyncReport
    disc: Disconnection
    selection: Selection
    cells: dict
    system: MonotoneSystem
    events: tuple
    certificates: dict


def build_counterexample(poset: Poset, cap_fences=DEFAULT_FENCE_CAP,
                         cap_maps=None) -> Bundle:
    reports = sync_reports(poset)
    if reports["synchronizable"]:
        raise HypothesisError(
            "the index poset is synchronizable in both directions; "
            "no counterexample exists", kind="synchronizable")
    if not reports[MINIMALS].synchronizable:
        direction, report = MINIMALS, reports[MINIMALS]
    else:
        direction, report = MAXIMALS, reports[MAXIMALS]
    if report.violation.get("kind") == "disconnected_graph":
        raise InputError(
            "the shared-bound graph is disconnected; the construction "
            "needs a spanning tree", kind="disconnected_graph")
    working = report.graph.poset
    disc = find_disconnecting(report)
    fences = enumerate_fences(working, disc, cap_fences)
    sel = select_fences(working, disc, fences)
    cells = partition_cells(working, disc, sel)
    target = build_wstar_poset(sel.width)
    system = build_system(working, disc, sel, target, cells)
    events = build_events(working, disc, sel)
    certificates = certify(system, events, cap_maps=cap_maps)
    return Bundle(direction, poset, report, disc, sel, cells, system,
                  events, certificates)


def _summary_lines(b: Bundle) -> list:
    n = b.selection.width
    first = b.selection.fences[b.selection.principal]
    seq = first.sequence()
    zig = "".join(x + (" < " if i % 2 == 0 else " > ")
                  for i, x in enumerate(seq[:-1])) + seq[-1]
    flip = " (after dualizing: the maximals direction failed)" \
        if b.direction == MAXIMALS else ""
    return [
        f"index poset is not synchronizable in the {b.direction} "
        f"direction{flip}",
        f"pivot {b.disc.pivot}: its {len(b.disc.below)} minimals split "
        f"into {len(b.disc.components)} tree components",
        f"origin {b.disc.origin} exits and re-enters via "
        f"{' - '.join(b.disc.path)}",
        f"{len(b.selection.fences)} fences found; selected {zig} with "
        f"{b.selection.counts[b.selection.principal]} upper companions",
        f"target star has {n + 3} elements; all measures share "
        f"denominator {n + 1}",
        f"{n + 2} pairwise exclusive events carry total probability "
        f"{format_rational(b.certificates['events']['total'])} > 1",
        f"linear program over {b.certificates['lp']['map_count']} monotone "
        "maps is infeasible",
    ]


def bundle_doc(b: Bundle) -> dict:
    sel = b.selection
    return {
        "direction": b.direction,
        "input_poset": poset_doc(b.input_poset),
        "graph": b.report.graph.doc(),
        "tree": [list(e) for e in b.report.tree],
        "tree_violation": dict(b.report.violation),
        "pivot": b.disc.pivot,
        "split_minimals": list(b.disc.below),
        "split_components": [list(c) for c in b.disc.components],
        "origin": b.disc.origin,
        "partner": b.disc.partner,
        "exit_path": list(b.disc.path),
        "restricted_forest": [list(e) for e in b.disc.forest],
        "fences": [fence_doc(f) for f in sel.fences],
        "upper_companion_counts": list(sel.counts),
        "selected_fence": sel.principal,
        "core_tops": list(sel.core_tops),
        "chosen_fences": list(sel.chosen),
        "far_bottoms": list(sel.far_bottoms),
        "mid_bottoms": list(sel.mid_bottoms),
        "high_tops": list(sel.high_tops),
        "cells": {name: list(members) for name, members in b.cells.items()},
        "system": system_doc(b.system),
        "events": [event_doc(e) for e in b.events],
        "certificates": {
            "monotone": b.certificates["monotone"],
            "lp": {
                "feasible": False,
                "map_count": b.certificates["lp"]["map_count"],
                "separating_vector":
                    b.certificates["lp"]["separating_vector"],
            },
            "event_total":
                format_rational(b.certificates["events"]["total"]),
            "event_probabilities": {
                k: format_rational(v) for k, v in
                b.certificates["events"]["probabilities"].items()},
            "event_anchors": b.certificates["events"]["anchors"],
            "event_disjoint": b.certificates["events"]["disjoint"],
        },
        "summary": _summary_lines(b),
    }
