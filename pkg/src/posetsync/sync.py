"""Synchronizability of an index poset.

The shared-bound graph lives on the minimal elements, joining two
minimals whenever they have a common upper bound.  Each edge carries the
set of minimals lying below every common upper bound of its endpoints;
the edge length is that set's size.  A spanning tree is locally
connected when its restriction to the minimals below any single element
stays connected, and the poset is synchronizable in a direction when
such a tree exists.  The decision runs Kruskal's algorithm and tests the
resulting tree: a locally connected tree exists iff the minimum-weight
tree is one.

The maximals direction is the same construction on the dual poset.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .bijections import compose, identity_translation
from .errors import CapExceeded, InputError, InternalCheckError
from .poset import Poset

MINIMALS = "minimals"
MAXIMALS = "maximals"


@dataclass(frozen=True)
class BoundGraph:
    poset: Poset     # already dualized for the maximals direction
    direction: str
    vertices: tuple  # minimal elements of the oriented poset, input order
    edges: tuple     # ((u, v), ...) ordered by index pair
    supports: tuple  # tuple of label tuples, aligned with edges

    def index_pair(self, edge):
        u, v = edge
        return self.poset.index[u], self.poset.index[v]

    def support(self, edge):
        return self.supports[self.edges.index(edge)]

    def length(self, edge) -> int:
        return len(self.support(edge))

    def weight(self, edges) -> int:
        return sum(self.length(e) for e in edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return len(_components(self.vertices, self.edges)) == 1

    def doc(self) -> dict:
        return {
            "direction": self.direction,
            "vertices": list(self.vertices),
            "edges": [{"ends": list(e), "support": list(s), "length": len(s)}
                      for e, s in zip(self.edges, self.supports)],
        }


def _components(vertices, edges):
    parent = {v: v for v in vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def edge_support(poset: Poset, u, v):
    """Minimals below every common upper bound of u and v, computed by
    the direct subset test and again by intersecting the minimals below
    each bound; the two must agree."""
    common = poset.up_mask(u) & poset.up_mask(v)
    if common == 0:
        raise InputError(f"{u!r} and {v!r} have no common upper bound")
    direct = tuple(g for g in poset.minimal_elements()
                   if common & ~poset.up_mask(g) == 0)
    acc = None
    for a in poset.labels_of(common):
        mask = poset.mask_of(poset.minimals_below(a))
        acc = mask if acc is None else acc & mask
    crosscheck = tuple(poset.labels_of(acc))
    if direct != crosscheck:
        raise InternalCheckError(
            f"edge support mismatch for ({u!r}, {v!r}): "
            f"{direct} vs {crosscheck}")
    if u not in direct or v not in direct:
        raise InternalCheckError(
            f"edge support of ({u!r}, {v!r}) misses an endpoint")
    return direct


def interlaced_graph(poset: Poset, direction=MINIMALS) -> BoundGraph:
    if direction not in (MINIMALS, MAXIMALS):
        raise InputError(f"unknown direction {direction!r}")
    oriented = poset if direction == MINIMALS else poset.dual()
    verts = tuple(oriented.minimal_elements())
    edges, supports = [], []
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if oriented.up_mask(u) & oriented.up_mask(v):
                edges.append((u, v))
                supports.append(edge_support(oriented, u, v))
    return BoundGraph(oriented, direction, verts, tuple(edges), tuple(supports))


def kruskal(graph: BoundGraph):
    """Minimum-weight spanning tree; ties fall to the earlier index pair."""
    if not graph.is_connected():
        raise InputError("shared-bound graph is disconnected",
                         kind="disconnected_graph")
    order = sorted(graph.edges,
                   key=lambda e: (graph.length(e), graph.index_pair(e)))
    parent = {v: v for v in graph.vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for e in order:
        ru, rv = find(e[0]), find(e[1])
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
    if len(tree) != len(graph.vertices) - 1:
        raise InternalCheckError("Kruskal produced a non-spanning forest")
    return tuple(tree)


def is_locally_connected(graph: BoundGraph, tree_edges, witness=False):
    """A tree is locally connected when its restriction to the minimals
    below each element is connected; first violator in input order."""
    poset = graph.poset
    for a in poset.elements:
        below = poset.minimals_below(a)
        kept = [e for e in tree_edges if e[0] in below and e[1] in below]
        if len(_components(tuple(below), kept)) != 1:
            if witness:
                return False, {"element": a, "minimals_below": list(below)}
            return False
    return (True, None) if witness else True


@dataclass(frozen=True)
class SyncReport:
    direction: str
    synchronizable: bool
    graph: BoundGraph
    tree: tuple    # MST edges, or () when the graph is disconnected
    weight: int
    violation: dict  # empty when synchronizable

    def doc(self) -> dict:
        return {
            "direction": self.direction,
            "synchronizable": self.synchronizable,
            "graph": self.graph.doc(),
            "tree": [list(e) for e in self.tree],
            "weight": self.weight,
            "violation": dict(self.violation),
        }


def is_synchronizable(poset: Poset, direction=MINIMALS) -> SyncReport:
    graph = interlaced_graph(poset, direction)
    if not graph.is_connected():
        return SyncReport(direction, False, graph, (), 0,
                          {"kind": "disconnected_graph"})
    tree = kruskal(graph)
    ok, detail = is_locally_connected(graph, tree, witness=True)
    violation = {} if ok else dict(detail, kind="not_locally_connected")
    return SyncReport(direction, ok, graph, tree, graph.weight(tree), violation)


def sync_reports(poset: Poset) -> dict:
    """Both directions plus the combined verdict."""
    lower = is_synchronizable(poset, MINIMALS)
    upper = is_synchronizable(poset, MAXIMALS)
    return {MINIMALS: lower, MAXIMALS: upper,
            "synchronizable": lower.synchronizable and upper.synchronizable}


# -- spanning-tree theory ---------------------------------------------------

def enumerate_spanning_trees(graph: BoundGraph, cap_vertices=7):
    nv = len(graph.vertices)
    if nv > cap_vertices:
        raise CapExceeded("spanning-tree enumeration exceeded the vertex cap",
                          cap=cap_vertices, vertices=nv)
    trees = []
    for subset in combinations(graph.edges, nv - 1):
        if len(_components(graph.vertices, subset)) == 1:
            trees.append(subset)
    return trees


def _tree_path(tree_edges, start, goal):
    adj = {}
    for u, v in tree_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            break
        for v in adj.get(u, ()):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    if goal not in parent:
        raise InternalCheckError("tree path lookup failed")
    path = []
    v = goal
    while parent[v] is not None:
        u = parent[v]
        path.append((u, v) if (u, v) in set(tree_edges) else (v, u))
        v = u
    return path


def tree_path_vertices(tree_edges, start, goal):
    """Unique vertex path between two tree vertices, start first."""
    path = [goal]
    for u, v in _tree_path(tree_edges, start, goal):
        path.append(u if path[-1] == v else v)
    path.reverse()
    return path


def descend(graph: BoundGraph, start_edges, target_edges):
    """Swap sequence from one spanning tree down to a minimum one.

    Edges are swept in a total order keyed by length, then membership
    (target first, start-only last), then index pair.  Adding an edge to
    the current tree closes one cycle; when the cycle's order-maximal
    edge is the added one nothing changes, otherwise that maximal edge
    leaves.  Each swap keeps the weight from increasing and the sweep
    ends exactly at the target tree.
    """
    start, target = tuple(start_edges), tuple(target_edges)
    mst = kruskal(graph)
    if graph.weight(target) != graph.weight(mst):
        raise InputError("descend target is not a minimum-weight tree",
                         target_weight=graph.weight(target),
                         minimum=graph.weight(mst))

    def rank(e):
        if e in target:
            return 0
        if e in start:
            return 2
        return 1

    def key(e):
        return (graph.length(e), rank(e), graph.index_pair(e))

    current = set(start)
    steps = []
    for e in sorted(graph.edges, key=key):
        if e in current:
            continue
        cycle = _tree_path(tuple(current), e[0], e[1]) + [e]
        out = max(cycle, key=key)
        if out == e:
            continue
        before = graph.weight(current)
        current.remove(out)
        current.add(e)
        after = graph.weight(current)
        if after > before:
            raise InternalCheckError("descend step increased the weight")
        steps.append({"added": e, "removed": out,
                      "weight_before": before, "weight_after": after})
    if current != set(target):
        raise InternalCheckError("descend did not terminate at the target tree")
    return steps


# -- product of the two trees -----------------------------------------------

@dataclass(frozen=True)
class ProductGraph:
    poset: Poset
    vertices: tuple  # ((alpha, beta), ...) minimals x maximals, comparable
    edges: tuple     # ((v, w), ...) v before w in vertex order

    def neighbors(self, v):
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out


def product_graph(poset: Poset, tree_min, tree_max) -> ProductGraph:
    """Tree-by-tree product on the comparable (minimal, maximal) pairs:
    one coordinate moves along its tree edge, the other stays."""
    minimals = poset.minimal_elements()
    maximals = poset.maximal_elements()
    vertices = tuple((a, b) for a in minimals for b in maximals
                     if poset.leq(a, b))
    vset = set(vertices)
    min_edges = {frozenset(e) for e in tree_min}
    max_edges = {frozenset(e) for e in tree_max}
    edges = []
    for i, (a, b) in enumerate(vertices):
        for (a2, b2) in vertices[i + 1:]:
            if a == a2 and frozenset((b, b2)) in max_edges:
                edges.append(((a, b), (a2, b2)))
            elif b == b2 and frozenset((a, a2)) in min_edges:
                edges.append(((a, b), (a2, b2)))
    if len(_components(vertices, edges)) != 1:
        raise InternalCheckError("product graph is disconnected")
    assert vset  # nonempty: every minimal sits below some maximal
    return ProductGraph(poset, vertices, tuple(edges))


def shortest_path_vertices(graph: ProductGraph, base, target):
    """Breadth-first path from base to target, as a vertex list; the
    search expands neighbors in vertex order, so the result is stable."""
    order = {v: i for i, v in enumerate(graph.vertices)}
    parent = {base: None}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for v in sorted(graph.neighbors(u), key=order.get):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    if target not in parent:
        raise InternalCheckError("product graph path lookup failed")
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def all_shortest_paths(graph: ProductGraph, base, target, cap=64):
    """Every minimum-size vertex path from base to target."""
    dist = {base: 0}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for v in graph.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    if target not in dist:
        raise InternalCheckError("product graph path lookup failed")
    paths = []

    def walk(v, acc):
        if len(paths) >= cap:
            raise CapExceeded("shortest-path enumeration exceeded the cap",
                              cap=cap)
        if v == base:
            paths.append([base] + acc[::-1])
            return
        for u in graph.neighbors(v):
            if dist.get(u) == dist[v] - 1:
                walk(u, acc + [v])

    walk(target, [])
    return paths


def path_composition(path_vertices, rsb_for_edge):
    """Compose the per-edge bijections along a vertex path, first edge
    applied first; the empty path composes to nothing (identity is the
    caller's concern via total mass)."""
    phi = None
    for v, w in zip(path_vertices, path_vertices[1:]):
        step = rsb_for_edge(v, w)
        phi = step if phi is None else compose(phi, step)
    return phi


def identity_phi(total):
    return identity_translation(total)
