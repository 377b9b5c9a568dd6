"""Finite partially ordered sets with exact order queries.

Conventions:
  - Elements are strings.  The order in which they are listed at
    construction is the canonical element order; every deterministic
    tie-break and every sorted output uses it.
  - Subsets are integer bitmasks internally (bit i = element i); public
    functions accept and return label lists sorted canonically.
  - The cover relation is stored transitively reduced as (lower, upper)
    pairs.  Arbitrary strict relation pairs may be supplied; implied
    pairs are absorbed into the closure and reduced away.
  - A top-level poset must have a connected Hasse diagram; induced
    subposets built internally may be disconnected.
"""

from __future__ import annotations

from .errors import CapExceeded, InputError

Element = str


class Poset:
    __slots__ = (
        "elements", "index", "covers", "_up", "_down", "_hash",
        "hasse_connected",
    )

    def __init__(self, elements, up_masks, down_masks, covers, hasse_connected):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._up = tuple(up_masks)
        self._down = tuple(down_masks)
        self.covers = tuple(covers)
        self.hasse_connected = hasse_connected
        self._hash = hash((self.elements, self.covers))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_relations(cls, elements, pairs, require_connected=True) -> "Poset":
        elements = list(elements)
        if not elements:
            raise InputError("poset needs at least one element")
        seen = set()
        for x in elements:
            if not isinstance(x, str) or not x:
                raise InputError(f"element labels must be nonempty strings, got {x!r}")
            if x in seen:
                raise InputError(f"duplicate element {x!r}")
            seen.add(x)
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)

        succ = [0] * n  # direct relation arcs, lower -> upper
        for pair in pairs:
            try:
                lo, hi = pair
            except (TypeError, ValueError):
                raise InputError(f"relation pair must be [lower, upper], got {pair!r}") from None
            if lo not in index or hi not in index:
                raise InputError(f"relation pair {pair!r} mentions unknown element")
            if lo == hi:
                raise InputError(f"relation pairs must be strict, got {pair!r}")
            succ[index[lo]] |= 1 << index[hi]

        up = cls._close(succ, elements)
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1:
                    down[j] |= 1 << i

        covers = []
        for i in range(n):
            strict_up = up[i] & ~(1 << i)
            for j in range(n):
                if strict_up >> j & 1:
                    between = strict_up & down[j] & ~(1 << j)
                    if between == 0:
                        covers.append((elements[i], elements[j]))
        covers.sort(key=lambda c: (index[c[0]], index[c[1]]))

        connected = cls._hasse_connected(n, covers, index)
        if require_connected and not connected:
            raise InputError(
                "Hasse diagram is disconnected", kind="disconnected_hasse")
        return cls(elements, up, down, covers, connected)

    @staticmethod
    def _close(succ, elements):
        # Reflexive-transitive closure; DFS doubles as cycle detection.
        n = len(succ)
        up = [None] * n
        state = [0] * n  # 0 fresh, 1 on stack, 2 done

        def visit(i, trail):
            if state[i] == 1:
                cycle = trail[trail.index(i):] + [i]
                raise InputError(
                    "relation contains a cycle: "
                    + " < ".join(elements[k] for k in cycle),
                    kind="cycle")
            if state[i] == 2:
                return
            state[i] = 1
            trail.append(i)
            mask = 1 << i
            for j in range(n):
                if succ[i] >> j & 1:
                    visit(j, trail)
                    mask |= up[j]
            trail.pop()
            state[i] = 2
            up[i] = mask

        for i in range(n):
            visit(i, [])
        return up

    @staticmethod
    def _hasse_connected(n, covers, index):
        if n == 1:
            return True
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for lo, hi in covers:
            ra, rb = find(index[lo]), find(index[hi])
            if ra != rb:
                parent[ra] = rb
        return len({find(i) for i in range(n)}) == 1

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poset)
                and self.elements == other.elements
                and self.covers == other.covers)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __contains__(self, label):
        return label in self.index

    def __repr__(self):
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    # -- masks and subsets -------------------------------------------------

    def mask_of(self, labels) -> int:
        mask = 0
        for x in labels:
            if x not in self.index:
                raise InputError(f"unknown element {x!r}")
            mask |= 1 << self.index[x]
        return mask

    def labels_of(self, mask: int):
        return [x for i, x in enumerate(self.elements) if mask >> i & 1]

    def up_mask(self, x) -> int:
        """Bitmask of {y : x <= y}."""
        return self._up[self.index[x]]

    def down_mask(self, x) -> int:
        """Bitmask of {y : y <= x}."""
        return self._down[self.index[x]]

    # -- order queries -----------------------------------------------------

    def leq(self, a, b) -> bool:
        return bool(self._up[self.index[a]] >> self.index[b] & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def comparable_pairs(self):
        """All pairs (a, b) with a < b, in canonical order."""
        out = []
        for i, a in enumerate(self.elements):
            up = self._up[i] & ~(1 << i)
            for j in range(len(self.elements)):
                if up >> j & 1:
                    out.append((a, self.elements[j]))
        return out

    def minimal_elements(self):
        return [x for i, x in enumerate(self.elements)
                if self._down[i] == 1 << i]

    def maximal_elements(self):
        return [x for i, x in enumerate(self.elements)
                if self._up[i] == 1 << i]

    def bottom(self):
        """The unique minimum, or None."""
        mins = self.minimal_elements()
        return mins[0] if len(mins) == 1 else None

    def top(self):
        maxs = self.maximal_elements()
        return maxs[0] if len(maxs) == 1 else None

    def principal_up_set(self, x):
        """{y : x <= y}, sorted canonically."""
        return self.labels_of(self.up_mask(x))

    def principal_down_set(self, x):
        """{y : y <= x}, sorted canonically."""
        return self.labels_of(self.down_mask(x))

    def minimals_below(self, x):
        """Minimal elements of the whole poset lying below-or-at x."""
        mins = self.mask_of(self.minimal_elements())
        return self.labels_of(mins & self.down_mask(x))

    def maximals_above(self, x):
        maxs = self.mask_of(self.maximal_elements())
        return self.labels_of(maxs & self.up_mask(x))

    # -- up-sets -----------------------------------------------------------

    def is_up_set_mask(self, mask: int) -> bool:
        for i in range(len(self.elements)):
            if mask >> i & 1 and self._up[i] & ~mask:
                return False
        return True

    def is_down_set_mask(self, mask: int) -> bool:
        for i in range(len(self.elements)):
            if mask >> i & 1 and self._down[i] & ~mask:
                return False
        return True

    def is_up_set(self, labels) -> bool:
        return self.is_up_set_mask(self.mask_of(labels))

    def is_down_set(self, labels) -> bool:
        return self.is_down_set_mask(self.mask_of(labels))

    def up_set_masks(self, cap_elements=20):
        """Yield every up-set as a bitmask.

        Elements are decided from the maximal end of a linear extension
        downward, so membership of everything above is known when an
        element is decided; the count can still be exponential, hence the
        element cap.
        """
        n = len(self.elements)
        if n > cap_elements:
            raise CapExceeded(
                f"up-set enumeration capped at {cap_elements} elements, poset has {n}",
                cap=cap_elements, size=n)
        order = self._linear_extension()  # minimal -> maximal
        order = order[::-1]

        def rec(pos, mask):
            if pos == len(order):
                yield mask
                return
            i = order[pos]
            yield from rec(pos + 1, mask)  # i stays out
            if self._up[i] & ~(1 << i) & ~mask == 0:  # everything above i is in
                yield from rec(pos + 1, mask | (1 << i))

        yield from rec(0, 0)

    def enumerate_up_sets(self, cap_elements=20):
        """All up-sets as label lists, sorted by (size, canonical order)."""
        masks = sorted(self.up_set_masks(cap_elements),
                       key=lambda m: (bin(m).count("1"), m))
        return [self.labels_of(m) for m in masks]

    def _linear_extension(self):
        """Indices in a topological order (minimal first), stable by index."""
        n = len(self.elements)
        out, placed = [], 0
        while len(out) < n:
            progressed = False
            for i in range(n):
                if placed >> i & 1:
                    continue
                below = self._down[i] & ~(1 << i)
                if below & ~placed == 0:
                    out.append(i)
                    placed |= 1 << i
                    progressed = True
            if not progressed:  # unreachable: construction rejects cycles
                raise InputError("relation contains a cycle", kind="cycle")
        return out

    def linear_extension(self):
        return [self.elements[i] for i in self._linear_extension()]

    # -- derived posets ----------------------------------------------------

    def dual(self) -> "Poset":
        """Same elements, all relations reversed."""
        flipped = [(b, a) for a, b in self.covers]
        return Poset.from_relations(self.elements, flipped,
                                    require_connected=False)

    def induced(self, labels) -> "Poset":
        """Induced subposet; covers recomputed, disconnection allowed."""
        keep = []
        seen = set()
        for x in labels:
            if x not in self.index:
                raise InputError(f"unknown element {x!r}")
            if x in seen:
                raise InputError(f"duplicate element {x!r}")
            seen.add(x)
        keep = sorted(seen, key=self.index.__getitem__)
        pairs = [(a, b) for a in keep for b in keep
                 if a != b and self.leq(a, b)]
        return Poset.from_relations(keep, pairs, require_connected=False)


# -- JSON ------------------------------------------------------------------

def parse_poset(doc, require_connected=True) -> Poset:
    if not isinstance(doc, dict):
        raise InputError("poset document must be an object")
    if "elements" not in doc or "covers" not in doc:
        raise InputError('poset document needs "elements" and "covers"')
    if not isinstance(doc["elements"], list) or not isinstance(doc["covers"], list):
        raise InputError('"elements" and "covers" must be arrays')
    return Poset.from_relations(doc["elements"], doc["covers"],
                                require_connected=require_connected)


def poset_doc(p: Poset) -> dict:
    return {"elements": list(p.elements),
            "covers": [list(c) for c in p.covers]}
