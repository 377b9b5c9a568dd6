"""Brute-force ground truth, kept independent of the constructive code.

Three routes live here: exhaustive enumeration of monotone maps between
posets, a coupling-by-linear-programming decision over those maps, and
an exact max-flow test for pairwise stochastic comparison.  The rest of
the library treats these as referees, never as ingredients.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import CapExceeded, InputError
from .lp import feasible_nonnegative_solution
from .measures import Measure, ZERO
from .poset import Poset
from .rationals import format_rational, parse_rational


def enumerate_monotone_maps(source: Poset, target: Poset, restrict=None,
                            cap=None):
    """All monotone maps source -> target, as tuples of target labels
    aligned with source.elements.

    restrict: optional dict limiting the allowed values of some source
    elements.  Assignment walks a linear extension, so checking lower
    covers of each newly placed element is enough.
    """
    order = source.linear_extension()
    pos = {x: k for k, x in enumerate(order)}
    allowed = []
    for x in order:
        if restrict is not None and x in restrict:
            pool = [t for t in target.elements if t in set(restrict[x])]
        else:
            pool = list(target.elements)
        allowed.append(pool)
    below = []  # earlier-placed lower covers of each slot
    for x in order:
        below.append([pos[lo] for lo, hi in source.covers if hi == x])

    maps = []
    chosen = [None] * len(order)

    def place(k):
        if k == len(order):
            if cap is not None and len(maps) >= cap:
                raise CapExceeded(
                    "monotone map enumeration exceeded the cap", cap=cap)
            by_label = dict(zip(order, chosen))
            maps.append(tuple(by_label[x] for x in source.elements))
            return
        for t in allowed[k]:
            if all(target.leq(chosen[i], t) for i in below[k]):
                chosen[k] = t
                place(k + 1)
        chosen[k] = None

    place(0)
    return maps


def realizably_monotone(source: Poset, target: Poset, measures: dict,
                        cap_maps=None):
    """Decide whether the family (measures[g] for g in source) is the
    family of marginals of one random monotone map source -> target.

    Returns (True, weights) with weights a map-tuple -> Fraction mixture,
    or (False, certificate) where the certificate carries an exactly
    re-verified separating vector over the (element, value) marginals.

    Maps are restricted to the supports of the measures, which loses no
    generality: positive weight on a map through a zero-mass value would
    overshoot that value's marginal.
    """
    family = _checked_family(source, measures)
    restrict = {g: family[g].support() for g in source.elements}
    maps = enumerate_monotone_maps(source, target, restrict, cap_maps)

    rows = [(g, x) for g in source.elements for x in family[g].support()]
    row_index = {rx: i for i, rx in enumerate(rows)}
    columns = []
    for mp in maps:
        col = [ZERO] * len(rows)
        for g, x in zip(source.elements, mp):
            col[row_index[(g, x)]] = Fraction(1)
        columns.append(col)
    b = [family[g].value(x) for g, x in rows]

    ok, payload = feasible_nonnegative_solution(columns, b)
    if ok:
        weights = {mp: wt for mp, wt in zip(maps, payload) if wt != 0}
        return True, weights
    certificate = {
        "separating_vector": [
            {"index": g, "value": x, "coefficient": format_rational(y)}
            for (g, x), y in zip(rows, payload)],
        "map_count": len(maps),
    }
    return False, certificate


def _checked_family(source: Poset, measures: dict):
    family = {}
    total = None
    for g in source.elements:
        if g not in measures:
            raise InputError(f"no measure given for index {g!r}")
        mu = measures[g]
        if not isinstance(mu, Measure):
            raise InputError(f"measure for index {g!r} is not a Measure")
        if total is None:
            total = mu.total()
        elif mu.total() != total:
            raise InputError("measures in the family have different totals",
                             index=g)
        family[g] = mu
    return family


# -- exact max-flow ---------------------------------------------------------

def strassen_pair(p: Measure, q: Measure, poset=None):
    """A coupling {(x, y): mass} of p below q with x <= y pointwise, or
    None when no such coupling exists; one exists exactly when p is
    stochastically below q.  Exact augmenting-path max-flow; the poset
    order supplies the permitted pairs."""
    if p.poset != q.poset or (poset is not None and poset != p.poset):
        raise InputError("measures live on different posets")
    if p.total() != q.total():
        raise InputError("measures have different totals")
    poset = p.poset
    left = [x for x in poset.elements if p.value(x) > 0]
    right = [y for y in poset.elements if q.value(y) > 0]

    source, sink = ("s",), ("t",)
    nodes = [source] + [("l", x) for x in left] + [("r", y) for y in right] + [sink]
    idx = {v: i for i, v in enumerate(nodes)}
    cap = {}

    def add_edge(u, v, c):
        cap[(u, v)] = cap.get((u, v), ZERO) + c
        cap.setdefault((v, u), ZERO)

    big = p.total() + 1
    for x in left:
        add_edge(idx[source], idx[("l", x)], p.value(x))
    for y in right:
        add_edge(idx[("r", y)], idx[sink], q.value(y))
    for x in left:
        for y in right:
            if poset.leq(x, y):
                add_edge(idx[("l", x)], idx[("r", y)], big)

    adj = [[] for _ in nodes]
    for (u, v) in cap:
        adj[u].append(v)
    flow = {e: ZERO for e in cap}

    def augment():
        parent = {idx[source]: None}
        queue = deque([idx[source]])
        while queue:
            u = queue.popleft()
            if u == idx[sink]:
                break
            for v in adj[u]:
                if v not in parent and cap[(u, v)] - flow[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if idx[sink] not in parent:
            return ZERO
        path = []
        v = idx[sink]
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        bottleneck = min(cap[e] - flow[e] for e in path)
        for u, v in path:
            flow[(u, v)] += bottleneck
            flow[(v, u)] -= bottleneck
        return bottleneck

    pushed = ZERO
    while True:
        extra = augment()
        if extra == 0:
            break
        pushed += extra
    if pushed != p.total():
        return None
    coupling = {}
    for x in left:
        for y in right:
            e = (idx[("l", x)], idx[("r", y)])
            if e in flow and flow[e] > 0:
                coupling[(x, y)] = flow[e]
    return coupling


# -- verdict documents ------------------------------------------------------

def verdict_doc(source: Poset, feasible, payload) -> dict:
    """Serializable form of a realizably_monotone answer."""
    if feasible:
        return {"feasible": True, "mixture": [
            {"map": dict(zip(source.elements, mp)),
             "weight": format_rational(wt)}
            for mp, wt in sorted(payload.items())]}
    return {"feasible": False, **payload}


def check_verdict(source: Poset, target: Poset, measures: dict, doc,
                  cap_maps=None) -> dict:
    """Re-verify a feasibility verdict against the system it talks about.

    A feasible verdict must carry a mixture of monotone maps whose
    weighted marginals reproduce every measure exactly.  An infeasible
    one must carry a separating vector that scores every
    support-restricted monotone map nonpositively while scoring the
    measure family positively.
    """
    family = _checked_family(source, measures)
    if not isinstance(doc, dict) or "feasible" not in doc:
        raise InputError('verdict document needs a "feasible" field')

    if doc["feasible"]:
        mixture = doc.get("mixture")
        if not isinstance(mixture, list) or not mixture:
            raise InputError('a feasible verdict needs a nonempty "mixture"')
        got = {g: {} for g in source.elements}
        for k, entry in enumerate(mixture):
            if not isinstance(entry, dict) or "map" not in entry \
                    or "weight" not in entry:
                raise InputError(f'mixture entry {k} needs "map" and "weight"')
            mp, wt = entry["map"], parse_rational(entry["weight"])
            for g in source.elements:
                if g not in mp:
                    raise InputError(f"mixture entry {k} misses index {g!r}")
                if mp[g] not in target.index:
                    raise InputError(
                        f"mixture entry {k} maps into unknown {mp[g]!r}")
            if wt < 0:
                return {"ok": False, "reason": "negative_weight", "entry": k}
            for lo, hi in source.covers:
                if not target.leq(mp[lo], mp[hi]):
                    return {"ok": False, "reason": "map_not_monotone",
                            "entry": k, "pair": [lo, hi]}
            for g in source.elements:
                got[g][mp[g]] = got[g].get(mp[g], ZERO) + wt
        for g in source.elements:
            if Measure.from_dict(target, got[g]) != family[g]:
                return {"ok": False, "reason": "marginal_mismatch", "index": g}
        return {"ok": True, "kind": "mixture", "maps": len(mixture)}

    vector = {}
    for row in doc.get("separating_vector", ()):
        if not isinstance(row, dict) or not {"index", "value",
                                             "coefficient"} <= set(row):
            raise InputError("separating vector rows need index, value, "
                             "and coefficient")
        vector[(row["index"], row["value"])] = parse_rational(
            row["coefficient"])
    restrict = {g: family[g].support() for g in source.elements}
    maps = enumerate_monotone_maps(source, target, restrict, cap_maps)
    for mp in maps:
        score = sum(vector.get((g, x), ZERO)
                    for g, x in zip(source.elements, mp))
        if score > 0:
            return {"ok": False, "reason": "vector_scores_a_map_positively",
                    "map": dict(zip(source.elements, mp))}
    rhs = sum(vector.get((g, x), ZERO) * family[g].value(x)
              for g in source.elements for x in family[g].support())
    if rhs <= 0:
        return {"ok": False, "reason": "vector_does_not_separate_the_family"}
    return {"ok": True, "kind": "separating_vector", "maps": len(maps)}
