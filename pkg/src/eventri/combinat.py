"""Two-block partitions of simplex corners (normal disc types)."""

from __future__ import annotations

from itertools import combinations
from math import comb

from eventri.perm import Permutation

Partition = tuple[tuple[int, ...], tuple[int, ...]]


def normalize(a, b) -> Partition:
    """Order the blocks so the first is smaller, or contains the least point on a tie."""
    a, b = tuple(sorted(a)), tuple(sorted(b))
    if len(a) > len(b) or (len(a) == len(b) and a[0] > b[0]):
        a, b = b, a
    return a, b


def partitions(points: int, k: int) -> list[Partition]:
    """All normalized ``{A, B}`` of ``range(points)`` with ``|A| = k <= points / 2``."""
    if not 1 <= k <= points // 2:
        raise ValueError(f"block size {k} out of range for {points} points")
    full = set(range(points))
    out = set()
    for a in combinations(range(points), k):
        out.add(normalize(a, full - set(a)))
    return sorted(out)


def partition_count(points: int, k: int) -> int:
    c = comb(points, k)
    return c // 2 if 2 * k == points else c


def act(p: Permutation, part: Partition) -> Partition:
    return normalize(p.act_on_set(part[0]), p.act_on_set(part[1]))


def induced_permutation(p: Permutation, classes: list[Partition], index: dict | None = None) -> Permutation:
    """Action of ``p`` on an ordered list of partitions, as a permutation of their indices."""
    if index is None:
        index = {c: i for i, c in enumerate(classes)}
    return Permutation(tuple(index[act(p, c)] for c in classes))
