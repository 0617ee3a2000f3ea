"""Union-find with an optional Z/2 parity on each element."""

from __future__ import annotations


class UnionFind:
    """Disjoint sets over hashable keys, tracking parity relative to the root.

    ``union(a, b, odd)`` records that a and b lie in one set and that their
    parities differ iff ``odd``.  A contradiction is remembered in
    ``conflicts`` rather than raised, since callers treat it as data
    (an edge glued to itself in reverse, a non-orientable surface, ...).
    """

    def __init__(self, keys=()):
        self._parent = {}
        self._parity = {}
        self._rank = {}
        self.conflicts = []
        for k in keys:
            self.add(k)

    def add(self, key):
        if key not in self._parent:
            self._parent[key] = key
            self._parity[key] = 0
            self._rank[key] = 0

    def __contains__(self, key):
        return key in self._parent

    def find(self, key):
        """Return ``(root, parity of key relative to root)``."""
        path = []
        node = key
        while self._parent[node] != node:
            path.append(node)
            node = self._parent[node]
        root = node
        # compress, accumulating parity from the far end of the path
        acc = 0
        for node in reversed(path):
            acc ^= self._parity[node]
            self._parity[node] = acc
            self._parent[node] = root
        return root, self._parity[key] if key != root else 0

    def root(self, key):
        return self.find(key)[0]

    def union(self, a, b, odd=False):
        self.add(a)
        self.add(b)
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        want = 1 if odd else 0
        if ra == rb:
            if (pa ^ pb) != want:
                self.conflicts.append((a, b))
                return False
            return True
        if self._rank[ra] < self._rank[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self._parent[rb] = ra
        self._parity[rb] = pa ^ pb ^ want
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        return True

    def groups(self):
        """Sets as lists, in first-insertion order of their members."""
        out = {}
        for key in self._parent:
            out.setdefault(self.root(key), []).append(key)
        return list(out.values())
