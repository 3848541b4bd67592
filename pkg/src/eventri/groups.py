"""Finite permutation groups given by generators: closure and a small classifier."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial

from eventri.perm import Permutation

KLEIN_NORMAL = frozenset(
    Permutation.from_cycles(c, 4) for c in ("()", "(01)(23)", "(02)(13)", "(03)(12)")
)


def closure(gens, degree: int) -> list[Permutation]:
    """All elements of the group generated by ``gens``, sorted by image tuple."""
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    cap = factorial(degree)
    gens = list(gens)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = g * h
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
        if len(seen) > cap:
            raise RuntimeError("closure exceeded the symmetric group order")
    return sorted(seen)


def normal_closure(subgens, gens, degree: int) -> list[Permutation]:
    """Smallest normal subgroup of <gens> containing ``subgens``."""
    current = set(closure(subgens, degree))
    while True:
        conj = {g * x * g.inverse() for g in gens for x in current}
        if conj <= current:
            return sorted(current)
        current = set(closure(list(current | conj), degree))


def abelian_invariants(elements: list[Permutation], gens) -> list[int]:
    """Invariant factors of the abelianization, e.g. ``[2, 2]`` or ``[3]``; trivial gives ``[]``."""
    degree = len(elements[0])
    comms = [a * b * a.inverse() * b.inverse() for a in gens for b in gens]
    derived = normal_closure(comms or [Permutation.identity(degree)], gens, degree)
    dset = set(derived)

    def key(g):
        return min(g * h for h in derived)

    reps = {}
    for g in elements:
        reps.setdefault(key(g), g)
    cosets = list(reps.values())

    def order_mod(g):
        x, e = g, 1
        while x not in dset:
            x = g * x
            e += 1
        return e

    orders = Counter(order_mod(g) for g in cosets)
    size = len(cosets)
    if size == 1:
        return []
    elementary = []
    for p in _primes(size):
        exps = []
        j = 1
        prev_log = 0
        ranks = []
        while True:
            cnt = sum(c for o, c in orders.items() if (p**j) % o == 0)
            log = _ilog(cnt, p)
            ranks.append(log - prev_log)
            if cnt == sum(c for o, c in orders.items() if _p_part(o, p) == o) and ranks[-1] == 0:
                break
            prev_log = log
            j += 1
        ranks = ranks[:-1]
        for j, r in enumerate(ranks, start=1):
            nxt = ranks[j] if j < len(ranks) else 0
            exps += [j] * (r - nxt)
        elementary += [(p, e) for e in exps]
    # combine elementary divisors into invariant factors
    by_prime: dict[int, list[int]] = {}
    for p, e in elementary:
        by_prime.setdefault(p, []).append(p**e)
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for powers in by_prime.values():
        powers = sorted(powers, reverse=True)
        for i, q in enumerate(powers):
            factors[length - 1 - i] *= q
    return factors


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _ilog(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def point_orbits(elements: list[Permutation]) -> list[list[int]]:
    degree = len(elements[0])
    seen = set()
    out = []
    for x in range(degree):
        if x in seen:
            continue
        orb = sorted({g(x) for g in elements})
        seen.update(orb)
        out.append(orb)
    return out


@dataclass(frozen=True)
class GroupClass:
    order: int
    label: str
    transitive: bool
    abelian_invariants: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"order": self.order, "label": self.label, "transitive": self.transitive}
        if self.abelian_invariants is not None:
            out["abelian_invariants"] = list(self.abelian_invariants)
        return out


def _is_cyclic(elements) -> bool:
    return any(g.order() == len(elements) for g in elements)


def classify(elements: list[Permutation], gens) -> GroupClass:
    """Label a permutation group.

    Subgroups of Sym(3) and Sym(4) get a name from a fixed table keyed by
    order, cycle types and (for order 4) Klein normality. Larger degrees report
    order, transitivity and abelian invariants only.
    """
    degree = len(elements[0])
    order = len(elements)
    transitive = len(point_orbits(elements)) == 1
    if order == 1:
        return GroupClass(1, "trivial", transitive, ())
    if degree <= 4:
        if order == 4:
            if _is_cyclic(elements):
                label = "C4"
            elif degree == 4 and frozenset(elements) == KLEIN_NORMAL:
                label = "K(normal)"
            else:
                label = "K(non-normal)"
        else:
            table = {2: "C2", 3: "C3", 6: "S3", 8: "D4", 12: "A4", 24: "S4"}
            label = table[order]
        return GroupClass(order, label, transitive)
    inv = tuple(abelian_invariants(elements, list(gens)))
    return GroupClass(order, "unclassified", transitive, inv)
