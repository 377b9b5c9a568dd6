"""Classification of tree-shaped posets by branching behaviour.

A poset whose Hasse diagram is a tree decomposes, once rooted at a leaf,
into maximal one-way paths: each path runs until the tree branches, and
the subtrees hanging off the branch point become the path's children in
a fixed plane order.  The classification reads off where branch points
sit relative to the order:

  NotTree     Hasse diagram has an undirected cycle
  NotClassW   some branch point is neither minimal nor maximal
  UpDown      no branch points at all (the Hasse diagram is a path)
  WStarLower  every branch point is maximal
  WStarUpper  every branch point is minimal
  GeneralW    branch points all extreme, but mixed

The same dividing line has an order-pattern form: a branch point that is
neither minimal nor maximal yields four elements whose induced subposet
is the "one above, one middle, two below" pattern (or its dual).  Both
tests run and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, InputError, InternalCheckError
from .poset import Poset


class WClass:
    NOT_TREE = "NotTree"
    NOT_CLASS_W = "NotClassW"
    UP_DOWN = "UpDown"
    W_STAR_UPPER = "WStarUpper"
    W_STAR_LOWER = "WStarLower"
    GENERAL_W = "GeneralW"

    TRACTABLE = (UP_DOWN, W_STAR_UPPER, W_STAR_LOWER, GENERAL_W)


def lower_star_class(tag: str) -> bool:
    """Every branch point maximal (up-down posets count)."""
    return tag in (WClass.W_STAR_LOWER, WClass.UP_DOWN)


def upper_star_class(tag: str) -> bool:
    """Every branch point minimal (up-down posets count)."""
    return tag in (WClass.W_STAR_UPPER, WClass.UP_DOWN)


@dataclass(frozen=True)
class PathNode:
    address: str          # "1", "1.0", "1.1", "1.0.2", ...
    path: tuple           # head u_1 .. tail u_*, root side first
    children: tuple       # child addresses in plane order

    @property
    def head(self):
        return self.path[0]

    @property
    def tail(self):
        return self.path[-1]


class PathTree:
    """A tree-Hasse poset rooted at a leaf, decomposed into one-way paths.

    The rooted order puts the root on top: x is rooted-below y exactly
    when the walk from the root to x passes through y.  Addresses name
    the paths; children are ordered by the canonical element order of
    their head elements.
    """

    def __init__(self, poset: Poset, root):
        if root not in poset.index:
            raise InputError(f"unknown root {root!r}")
        n = len(poset.elements)
        adj = {x: [] for x in poset.elements}
        for lo, hi in poset.covers:
            adj[lo].append(hi)
            adj[hi].append(lo)
        for x in adj:
            adj[x].sort(key=poset.index.__getitem__)
        if not poset.hasse_connected or len(poset.covers) != n - 1:
            raise InputError("Hasse diagram is not a tree", kind="not_tree")
        if n > 1 and len(adj[root]) != 1:
            raise InputError(f"root {root!r} is not a leaf", kind="root_not_leaf")

        self.poset = poset
        self.root = root
        self.parent = {root: None}  # tree parent, toward the root
        self.nodes = {}
        self.node_of = {}           # element -> address of its path
        order = []                  # BFS order of elements

        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in adj[v]:
                if w != self.parent[v] and w not in self.parent:
                    self.parent[w] = v
                    queue.append(w)

        def successors(v):
            return [w for w in adj[v] if w != self.parent[v]]

        def build(start, address):
            path = [start]
            while True:
                nxt = successors(path[-1])
                if len(nxt) != 1:
                    break
                path.append(nxt[0])
            kids = successors(path[-1])
            child_addrs = tuple(f"{address}.{i}" for i in range(len(kids)))
            node = PathNode(address, tuple(path), child_addrs)
            self.nodes[address] = node
            for x in path:
                self.node_of[x] = address
            for addr, kid in zip(child_addrs, kids):
                build(kid, addr)

        build(root, "1")

        # Ancestor-or-self masks give O(1) rooted-order queries; the
        # rooted order has the root as maximum.
        idx = poset.index
        self._anc = {}
        for v in order:
            above = self._anc[self.parent[v]] if self.parent[v] else 0
            self._anc[v] = above | (1 << idx[v])
        self._below = {v: 1 << idx[v] for v in poset.elements}
        for v in reversed(order):
            if self.parent[v] is not None:
                self._below[self.parent[v]] |= self._below[v]

        self.addresses = tuple(sorted(self.nodes, key=_address_key))
        self._memo = {}

    def rooted_leq(self, x, y) -> bool:
        """x below-or-at y in the rooted order (root is the maximum)."""
        return bool(self._anc[x] >> self.poset.index[y] & 1)

    def section_mask(self, x, strict=False) -> int:
        """Bitmask of {y : y rooted-below-or-at x}; strict drops x."""
        mask = self._below[x]
        if strict:
            mask &= ~(1 << self.poset.index[x])
        return mask

    def section(self, x, strict=False):
        return self.poset.labels_of(self.section_mask(x, strict))

    def section_kind(self, x, strict=False) -> str:
        """"up", "down", or "both" for the section at x.

        Every section being an up-set or a down-set of the underlying
        poset is exactly what the tractable classes guarantee; a section
        that is neither certifies the poset is outside them.
        """
        mask = self.section_mask(x, strict)
        down = self.poset.is_down_set_mask(mask)
        up = self.poset.is_up_set_mask(mask)
        if down and up:
            return "both"
        if down:
            return "down"
        if up:
            return "up"
        raise HypothesisError(
            f"section at {x!r} is neither an up-set nor a down-set",
            element=x, strict=strict)

    def attach_element(self, address):
        """The element a non-root path hangs off: its parent path's tail."""
        node = self.nodes[address]
        if address == "1":
            return None
        parent_addr = address.rsplit(".", 1)[0]
        return self.nodes[parent_addr].tail

    def branch_addresses(self):
        """Addresses whose paths have children."""
        return [a for a in self.addresses if self.nodes[a].children]

    def lex_order(self):
        """Addresses listed from the order's bottom up (children before
        parents, sibling subtrees in plane order)."""
        out = []

        def post(address):
            for child in self.nodes[address].children:
                post(child)
            out.append(address)

        post("1")
        return out

    def doc(self) -> dict:
        return {addr: {"path": list(node.path), "children": list(node.children)}
                for addr, node in sorted(self.nodes.items(), key=lambda kv: _address_key(kv[0]))}


def _address_key(address: str):
    return tuple(int(part) for part in address.split("."))


def build_path_tree(poset: Poset, root) -> PathTree:
    return PathTree(poset, root)


@dataclass(frozen=True)
class Classification:
    tag: str
    root: object            # root element, None when NotTree
    tree: object            # PathTree or None
    bad_branch: object      # (address, element) for NotClassW
    pattern: object         # offending induced 4-element pattern, if any

    def doc(self) -> dict:
        out = {"class": self.tag}
        if self.root is not None:
            out["root"] = self.root
        if self.tree is not None:
            out["tree"] = self.tree.doc()
        if self.bad_branch is not None:
            out["witnesses"] = {
                "branch": {"address": self.bad_branch[0],
                           "element": self.bad_branch[1]},
                "pattern": dict(self.pattern),
            }
        return out


def _find_mid_branch_pattern(poset: Poset):
    """A 4-element induced pattern certifying a mid-poset branch point:
    two incomparable elements under a common mid element with something
    above it, or the dual.  First hit in canonical order, else None."""
    els = poset.elements
    n = len(els)
    for mi, mid in enumerate(els):
        below = [x for x in els if poset.lt(x, mid)]
        above = [x for x in els if poset.lt(mid, x)]
        if len(below) >= 2 and above:
            for i in range(len(below)):
                for j in range(i + 1, len(below)):
                    if not poset.comparable(below[i], below[j]):
                        return {"low": [below[i], below[j]],
                                "mid": mid, "high": above[0],
                                "orientation": "branch_below"}
        if len(above) >= 2 and below:
            for i in range(len(above)):
                for j in range(i + 1, len(above)):
                    if not poset.comparable(above[i], above[j]):
                        return {"high": [above[i], above[j]],
                                "mid": mid, "low": below[0],
                                "orientation": "branch_above"}
    return None


def classify(poset: Poset, root=None) -> Classification:
    """Classify a poset by its branching structure.

    The Hasse diagram must be connected (enforced at parse time).  The
    default root is the first leaf in canonical element order; the tag
    does not depend on the choice, which tests check exhaustively on
    small posets.
    """
    n = len(poset.elements)
    if len(poset.covers) != n - 1:
        # connected with n-1 edges <=> tree; more edges means a cycle
        return Classification(WClass.NOT_TREE, None, None, None, None)

    degree = {x: 0 for x in poset.elements}
    for lo, hi in poset.covers:
        degree[lo] += 1
        degree[hi] += 1
    if root is None:
        root = next(x for x in poset.elements if degree[x] <= 1)
    tree = PathTree(poset, root)

    minimals = set(poset.minimal_elements())
    maximals = set(poset.maximal_elements())

    bad = None
    saw_min_branch = saw_max_branch = False
    for addr in tree.branch_addresses():
        tail = tree.nodes[addr].tail
        is_min, is_max = tail in minimals, tail in maximals
        if not is_min and not is_max:
            if bad is None:
                bad = (addr, tail)
        elif is_min:
            saw_min_branch = True
        else:
            saw_max_branch = True

    pattern = _find_mid_branch_pattern(poset)
    if (bad is None) != (pattern is None):
        raise InternalCheckError(
            f"branch test and pattern test disagree: branch={bad}, pattern={pattern}")

    if bad is not None:
        return Classification(WClass.NOT_CLASS_W, root, tree, bad, pattern)
    if not tree.branch_addresses():
        return Classification(WClass.UP_DOWN, root, tree, None, None)
    if saw_min_branch and saw_max_branch:
        return Classification(WClass.GENERAL_W, root, tree, None, None)
    if saw_max_branch:
        return Classification(WClass.W_STAR_LOWER, root, tree, None, None)
    return Classification(WClass.W_STAR_UPPER, root, tree, None, None)
