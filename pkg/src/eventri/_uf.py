from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    """Union-find over arbitrary hashable keys, with optional Z2 parity.

    ``union(a, b, parity)`` asserts ``label(a) + label(b) == parity (mod 2)``;
    a contradicting assertion is recorded in ``conflict`` rather than raised.
    """

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.rank: dict = {}
        self.par: dict = {}
        self.conflict = False
        for k in keys:
            self.add(k)

    def add(self, key) -> None:
        if key not in self.parent:
            self.parent[key] = key
            self.rank[key] = 0
            self.par[key] = 0

    def find(self, key):
        root, parity = self._find(key)
        return root

    def _find(self, key):
        path = []
        while self.parent[key] != key:
            path.append(key)
            key = self.parent[key]
        root = key
        # compress, accumulating parity from the far end of the path
        acc = 0
        for node in reversed(path):
            acc ^= self.par[node]
            self.par[node] = acc
            self.parent[node] = root
        return root, (self.par[path[0]] if path else 0)

    def parity(self, key) -> int:
        return self._find(key)[1]

    def union(self, a, b, parity: int = 0) -> bool:
        ra, pa = self._find(a)
        rb, pb = self._find(b)
        if ra == rb:
            if (pa ^ pb) != parity:
                self.conflict = True
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.par[rb] = pa ^ pb ^ parity
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def groups(self) -> list[list]:
        """Classes in order of first key insertion; members keep insertion order."""
        by_root: dict = {}
        for k in self.parent:
            by_root.setdefault(self.find(k), []).append(k)
        return list(by_root.values())
