"""Permutations of {0..m-1} stored as image tuples."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of ``{0..m-1}``; ``images[i]`` is the image of ``i``.

    Composition follows function notation: ``(p * q)(i) == p(q(i))``,
    so ``q`` is applied first.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(m)))

    @classmethod
    def from_cycles(cls, text: str, m: int) -> "Permutation":
        """Parse cycle notation such as ``"(032)"``, ``"(03)(12)"`` or ``"(0,10,3)"``.

        Cycles without commas are read digit by digit.
        """
        images = list(range(m))
        for body in re.findall(r"\(([^)]*)\)", text):
            body = body.strip()
            if not body:
                continue
            if "," in body or " " in body:
                pts = [int(t) for t in re.split(r"[,\s]+", body) if t]
            else:
                pts = [int(ch) for ch in body]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle ({body})")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(len(self))
        for _ in range(abs(e)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths including fixed points."""
        lengths = [len(c) for c in self.cycles()]
        fixed = len(self.images) - sum(lengths)
        return tuple(sorted(lengths + [1] * fixed, reverse=True))

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type()) if self.images else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def act_on_set(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[i] for i in subset)

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        sep = "" if len(self.images) <= 10 else ","
        return "".join("(" + sep.join(str(i) for i in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def to_list(self) -> list[int]:
        return list(self.images)


def compose_all(perms: Sequence[Permutation], m: int) -> Permutation:
    """``perms[-1] * ... * perms[0]``: apply ``perms[0]`` first."""
    out = Permutation.identity(m)
    for p in perms:
        out = p * out
    return out
