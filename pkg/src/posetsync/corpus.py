"""Deterministic randomized corpus for property tests and the CLI.

Everything is driven by an explicit integer seed; the same seed yields
the same corpus, element for element.  Index and target posets are
random oriented trees (optionally thickened with extra relations),
filtered by the structural predicate each scheme needs.  Systems are
mixtures of random monotone maps with random rational weights, so they
are stochastically monotone by construction while still exercising the
full realization machinery.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .classw import WClass, classify
from .errors import InternalCheckError
from .measures import Measure, measure_doc
from .poset import Poset, poset_doc
from .realize import MonotoneSystem, system_doc
from .sync import MAXIMALS, MINIMALS, is_synchronizable, sync_reports

# scheme name -> (instances, index-poset predicate key, target tags)
STAR_LOWER_TAGS = (WClass.W_STAR_LOWER,)
STAR_UPPER_TAGS = (WClass.W_STAR_UPPER,)
UNBOUNDED_TAGS = (WClass.W_STAR_UPPER, WClass.W_STAR_LOWER, WClass.GENERAL_W)

SCHEMES = (
    ("bounded", 50),
    ("minimum", 30),
    ("maximum", 30),
    ("updown", 30),
    ("sync_pair", 30),
    ("sync_lower", 15),
    ("sync_upper", 15),
)

MAX_INDEX = 6
MAX_TARGET = 7
MAX_DENOMINATOR = 12
ATTEMPTS = 2000


def _random_tree_poset(rand, size, prefix):
    """Random labelled tree with random edge orientations; the tree is
    its own cover graph whichever way the edges point."""
    labels = [f"{prefix}{i}" for i in range(size)]
    pairs = []
    for i in range(1, size):
        j = rand.randrange(i)
        a, b = (labels[j], labels[i]) if rand.randrange(2) else (labels[i],
                                                                 labels[j])
        pairs.append((a, b))
    return Poset.from_relations(labels, pairs)


def _random_poset(rand, size, prefix="a", extra=2):
    """Random connected poset: an oriented tree plus a few added
    relations between still-incomparable pairs."""
    poset = _random_tree_poset(rand, size, prefix)
    for _ in range(rand.randint(0, extra)):
        free = [(x, y) for x in poset.elements for y in poset.elements
                if x != y and not poset.comparable(x, y)]
        if not free:
            break
        x, y = free[rand.randrange(len(free))]
        pairs = list(poset.covers) + [(x, y)]
        poset = Poset.from_relations(poset.elements, pairs)
    return poset


def random_target_poset(rand, tags=WClass.TRACTABLE, size_max=MAX_TARGET):
    for _ in range(ATTEMPTS):
        poset = _random_tree_poset(rand, rand.randint(2, size_max), "s")
        if classify(poset).tag in tags:
            return poset
    raise InternalCheckError("target poset generation ran out of attempts")


def _has_both_ends(poset):
    return poset.bottom() is not None and poset.top() is not None


def _index_predicate(scheme):
    if scheme == "bounded":
        return _has_both_ends
    if scheme == "minimum":
        return lambda p: p.bottom() is not None and p.top() is None
    if scheme == "maximum":
        return lambda p: p.top() is not None and p.bottom() is None
    if scheme == "updown":
        return lambda p: True

    def unbounded_sync(p, need=scheme):
        if p.bottom() is not None or p.top() is not None:
            return False
        lower = is_synchronizable(p, MINIMALS).synchronizable
        upper = is_synchronizable(p, MAXIMALS).synchronizable
        if need == "sync_pair":
            return lower and upper
        if need == "sync_lower":
            return lower
        return upper

    return unbounded_sync


def _target_tags(scheme):
    if scheme == "updown":
        return (WClass.UP_DOWN,)
    if scheme in ("bounded",):
        return WClass.TRACTABLE
    if scheme == "minimum":
        return STAR_LOWER_TAGS + (WClass.UP_DOWN,)
    if scheme == "maximum":
        return STAR_UPPER_TAGS + (WClass.UP_DOWN,)
    if scheme == "sync_pair":
        return UNBOUNDED_TAGS
    if scheme == "sync_lower":
        return STAR_LOWER_TAGS
    return STAR_UPPER_TAGS


def random_index_poset(rand, scheme, size_max=MAX_INDEX):
    good = _index_predicate(scheme)
    for _ in range(ATTEMPTS):
        size = rand.randint(2, size_max)
        poset = _random_poset(rand, size)
        if good(poset):
            return poset
    raise InternalCheckError(
        f"index poset generation for {scheme!r} ran out of attempts")


def random_monotone_map(rand, source: Poset, target: Poset, attempts=200):
    """Greedy random assignment along a linear extension, restarted on a
    dead end."""
    order = source.linear_extension()
    position = {x: i for i, x in enumerate(order)}
    lower_covers = {x: [lo for lo, hi in source.covers if hi == x]
                    for x in order}
    for _ in range(attempts):
        image = {}
        for x in order:
            pool = [t for t in target.elements
                    if all(target.leq(image[lo], t)
                           for lo in lower_covers[x])]
            if not pool:
                break
            image[x] = pool[rand.randrange(len(pool))]
        else:
            return tuple(image[x] for x in source.elements)
    raise InternalCheckError("monotone map sampling ran out of restarts")


def _random_weights(rand, parts, denom_max=MAX_DENOMINATOR):
    denom = rand.randint(parts, denom_max)
    cuts = sorted(rand.sample(range(1, denom), parts - 1)) if parts > 1 else []
    edges = [0] + cuts + [denom]
    return [Fraction(b - a, denom) for a, b in zip(edges, edges[1:])]


def mixture_system(rand, index_poset, target_poset,
                   denom_max=MAX_DENOMINATOR, max_maps=4) -> MonotoneSystem:
    parts = rand.randint(1, max_maps)
    maps = [random_monotone_map(rand, index_poset, target_poset)
            for _ in range(parts)]
    weights = _random_weights(rand, parts, denom_max)
    measures = {}
    for i, g in enumerate(index_poset.elements):
        mass = {}
        for image, w in zip(maps, weights):
            mass[image[i]] = mass.get(image[i], Fraction(0)) + w
        measures[g] = Measure.from_dict(target_poset, mass)
    return MonotoneSystem.from_measures(index_poset, target_poset, measures)


def realization_corpus(seed, schemes=SCHEMES):
    """The scheme-tagged systems behind the realization and oracle
    property criteria."""
    out = []
    for scheme, count in schemes:
        rand = random.Random(f"{seed}:{scheme}")
        for _ in range(count):
            index_poset = random_index_poset(rand, scheme)
            target_poset = random_target_poset(rand, _target_tags(scheme))
            out.append((scheme, mixture_system(rand, index_poset,
                                               target_poset)))
    return out


def random_measure(rand, poset, denom_max=MAX_DENOMINATOR) -> Measure:
    denom = rand.randint(1, denom_max)
    counts = [0] * len(poset.elements)
    for _ in range(denom):
        counts[rand.randrange(len(counts))] += 1
    return Measure.from_dict(
        poset, {x: Fraction(c, denom)
                for x, c in zip(poset.elements, counts) if c})


def measure_pair_corpus(seed, count=60):
    """Random same-poset measure pairs on tractable targets, both totals
    one, ordered and unordered alike."""
    rand = random.Random(f"{seed}:pairs")
    out = []
    for _ in range(count):
        poset = random_target_poset(rand)
        out.append((poset, random_measure(rand, poset),
                    random_measure(rand, poset)))
    return out


# -- non-synchronizable index posets ---------------------------------------

def crown_poset(k, rand=None, extra_tops=0, with_root=False) -> Poset:
    """k bottoms below all tops but their partners; optionally extra
    tops over every bottom, or a root below every bottom.  Element order
    is shuffled when a generator is supplied."""
    bottoms = [f"u{i}" for i in range(k)]
    tops = [f"v{i}" for i in range(k)]
    more = [f"w{i}" for i in range(extra_tops)]
    root = ["r"] if with_root else []
    pairs = [(b, t) for i, b in enumerate(bottoms)
             for j, t in enumerate(tops) if i != j]
    pairs += [(b, w) for b in bottoms for w in more]
    pairs += [("r", b) for b in bottoms] if with_root else []
    elements = root + bottoms + tops + more
    if rand is not None:
        rand.shuffle(elements)
    return Poset.from_relations(elements, pairs)


def nonsync_corpus(seed, count=24):
    """Index posets that are not synchronizable in at least one
    direction, each re-checked before being returned."""
    rand = random.Random(f"{seed}:nonsync")
    recipes = []
    for i in range(count):
        kind = i % 4
        if kind == 0:
            recipes.append(dict(k=3))
        elif kind == 1:
            recipes.append(dict(k=4))
        elif kind == 2:
            recipes.append(dict(k=3, extra_tops=1 + i % 2))
        else:
            recipes.append(dict(k=3, with_root=True))
    out = []
    for recipe in recipes:
        poset = crown_poset(rand=rand, **recipe)
        reports = sync_reports(poset)
        if reports["synchronizable"]:
            raise InternalCheckError("a crown came out synchronizable")
        out.append(poset)
    return out


# -- instances for the bijection-algebra properties ------------------------

def rsb_corpus(seed, count=30):
    """Mixture systems over the complete-bipartite four-element index
    poset; its product graph is a four-cycle, so every instance carries
    two distinct minimum paths between opposite corners."""
    rand = random.Random(f"{seed}:rsb")
    index_poset = Poset.from_relations(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    out = []
    for _ in range(count):
        target = random_target_poset(rand)
        out.append(mixture_system(rand, index_poset, target))
    return out


def corpus_doc(seed) -> dict:
    return {
        "seed": seed,
        "systems": [dict(system_doc(sys), scheme=scheme)
                    for scheme, sys in realization_corpus(seed)],
        "measure_pairs": [
            {"poset": poset_doc(poset),
             "left": measure_doc(p), "right": measure_doc(q)}
            for poset, p, q in measure_pair_corpus(seed)],
        "nonsync_posets": [poset_doc(p) for p in nonsync_corpus(seed)],
        "rsb_systems": [system_doc(sys) for sys in rsb_corpus(seed)],
    }
