"""Normal disc types, matching equations and hypersurfaces assembled from 0/1 solutions.

A disc type in a simplex is an unordered split ``{A, B}`` of its corners. It
meets facet ``i`` in the facet disc ``{A - i, B - i}`` unless one side becomes
empty (then the disc is the vertex link of corner ``i`` and misses that facet).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from eventri import combinat
from eventri._uf import UnionFind
from eventri.combinat import Partition
from eventri.errors import InadmissibleSolution, UnsupportedDimension, WeightsNotZeroOne
from eventri.perm import Permutation
from eventri.symrep import canonical_representation, induced_representation, walk_around
from eventri.groups import point_orbits
from eventri.triangulation import Triangulation, dual_graph, face_orbits, is_even, vertex_count


@dataclass(frozen=True, order=True)
class NormalDiscType:
    simplex: int
    partition: Partition

    @property
    def k(self) -> int:
        return len(self.partition[0])


@dataclass(frozen=True)
class DiscShape:
    k: int
    partitions: tuple[Partition, ...]

    @property
    def count(self) -> int:
        return len(self.partitions)


def enumerate_disc_types(n: int) -> list[DiscShape]:
    """Disc types of one n-simplex grouped by the size of the smaller side."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return [DiscShape(k, tuple(combinat.partitions(n + 1, k))) for k in range(1, (n + 1) // 2 + 1)]


class DiscIndex:
    """Column order of the normal coordinates: simplex-major, then by ``k``, then partition."""

    def __init__(self, dim: int, num_simplices: int):
        self.dim = dim
        self.num_simplices = num_simplices
        self.local: list[Partition] = [p for shape in enumerate_disc_types(dim) for p in shape.partitions]
        self.local_index = {p: i for i, p in enumerate(self.local)}
        self.per_simplex = len(self.local)

    def __len__(self) -> int:
        return self.per_simplex * self.num_simplices

    def var(self, s: int, part: Partition) -> int:
        return s * self.per_simplex + self.local_index[part]

    def disc(self, v: int) -> NormalDiscType:
        s, r = divmod(v, self.per_simplex)
        return NormalDiscType(s, self.local[r])


def restrict(part: Partition, i: int) -> Partition | None:
    """Facet disc cut on facet ``i``, or None when the disc misses that facet."""
    a = tuple(v for v in part[0] if v != i)
    b = tuple(v for v in part[1] if v != i)
    if not a or not b:
        return None
    return combinat.normalize(a, b)


def facet_disc_types(n: int, i: int) -> list[Partition]:
    """All splits of the corners of facet ``i`` into two non-empty sets."""
    pts = [v for v in range(n + 1) if v != i]
    out = set()
    for r in range(1, len(pts) // 2 + 1):
        for a in combinations(pts, r):
            out.add(combinat.normalize(a, [v for v in pts if v not in a]))
    return sorted(out)


def image_partition(p: Permutation, part: Partition) -> Partition:
    return combinat.act(p, part)


@dataclass(frozen=True)
class Equation:
    source: tuple[int, int]
    target: tuple[int, int]
    facet_disc: Partition
    coeffs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MatchingSystem:
    index: DiscIndex = field(repr=False)
    equations: tuple[Equation, ...]

    def matrix(self) -> np.ndarray:
        M = np.zeros((len(self.equations), len(self.index)), dtype=np.int64)
        for r, eq in enumerate(self.equations):
            for v, c in eq.coeffs:
                M[r, v] = c
        return M


def build_matching_system(T: Triangulation) -> MatchingSystem:
    """One equation per glued facet pair and facet disc type, each pair visited once."""
    n = T.dim
    index = DiscIndex(n, T.num_simplices)
    eqs = []
    seen = set()
    for s, i in T.facets():
        if (s, i) in seen:
            continue
        t, j = T.partner(s, i)
        seen.update({(s, i), (t, j)})
        p = T.gluing(s, i).vertex_map
        for mu in facet_disc_types(n, i):
            mu_t = image_partition(p, mu)
            coeffs: Counter = Counter()
            for part in index.local:
                if restrict(part, i) == mu:
                    coeffs[index.var(s, part)] += 1
                if restrict(part, j) == mu_t:
                    coeffs[index.var(t, part)] -= 1
            eqs.append(Equation((s, i), (t, j), mu, tuple(sorted((v, c) for v, c in coeffs.items() if c))))
    return MatchingSystem(index, tuple(eqs))


@dataclass(frozen=True)
class NormalCoordinate:
    index: DiscIndex = field(repr=False, compare=False)
    weights: tuple[int, ...]

    @classmethod
    def zeros(cls, T: Triangulation) -> "NormalCoordinate":
        index = DiscIndex(T.dim, T.num_simplices)
        return cls(index, (0,) * len(index))

    @classmethod
    def from_discs(cls, T: Triangulation, discs: dict) -> "NormalCoordinate":
        index = DiscIndex(T.dim, T.num_simplices)
        w = [0] * len(index)
        for d, x in discs.items():
            w[index.var(d.simplex, d.partition)] = int(x)
        return cls(index, tuple(w))

    def support(self) -> list[tuple[NormalDiscType, int]]:
        return [(self.index.disc(v), x) for v, x in enumerate(self.weights) if x]


def verify_solution(S: MatchingSystem, x: NormalCoordinate) -> tuple[bool, Equation | None]:
    """Exact integer check of every matching equation; returns the first violated one."""
    if any(w < 0 for w in x.weights):
        raise ValueError("weights must be non-negative")
    if not S.equations:
        return True, None
    residual = S.matrix() @ np.asarray(x.weights, dtype=np.int64)
    bad = np.flatnonzero(residual)
    if bad.size:
        return False, S.equations[int(bad[0])]
    return True, None


def canonical_solution(T: Triangulation, k: int) -> NormalCoordinate:
    """Weight one on every disc type whose smaller side has ``k`` corners."""
    if not 1 <= k <= (T.dim + 1) // 2:
        raise ValueError(f"k must lie in 1..{(T.dim + 1) // 2}, got {k}")
    index = DiscIndex(T.dim, T.num_simplices)
    w = [1 if len(index.disc(v).partition[0]) == k else 0 for v in range(len(index))]
    return NormalCoordinate(index, tuple(w))


# -- assembly ----------------------------------------------------------------


@dataclass(frozen=True)
class Hypersurface:
    """Cells glued along their facet pieces.

    ``pairing[(c, i)] = (c', j)`` says piece ``i`` of cell ``c`` (where the cell
    meets facet ``i`` of its simplex) is glued to piece ``j`` of cell ``c'``.
    """

    dim: int
    cells: tuple[NormalDiscType, ...]
    pairing: dict = field(repr=False)
    components: tuple[tuple[int, ...], ...]

    def pieces(self, c: int) -> list[int]:
        part = self.cells[c].partition
        return [i for i in range(self.dim + 1) if restrict(part, i) is not None]

    def component_of(self) -> list[int]:
        out = [0] * len(self.cells)
        for idx, comp in enumerate(self.components):
            for c in comp:
                out[c] = idx
        return out


def assemble_hypersurface(T: Triangulation, x: NormalCoordinate, system: MatchingSystem | None = None) -> Hypersurface:
    """Glue one cell per unit weight across every facet pairing.

    Pieces are matched to the perspectivity image of their own disc type when
    that type is present on the other side; leftovers sharing the same facet
    disc are matched in sorted order.
    """
    if any(w not in (0, 1) for w in x.weights):
        raise WeightsNotZeroOne("assembly requires weights in {0, 1}")
    ok, eq = verify_solution(system or build_matching_system(T), x)
    if not ok:
        raise InadmissibleSolution(
            f"matching equation fails on facet pair {eq.source}-{eq.target}, facet disc {eq.facet_disc}"
        )
    cells = tuple(d for d, _ in x.support())
    cell_of = {(d.simplex, d.partition): c for c, d in enumerate(cells)}
    by_simplex: dict[int, list[int]] = {}
    for c, d in enumerate(cells):
        by_simplex.setdefault(d.simplex, []).append(c)
    pairing: dict = {}
    done = set()
    for s, i in T.facets():
        if (s, i) in done:
            continue
        t, j = T.partner(s, i)
        done.update({(s, i), (t, j)})
        p = T.gluing(s, i).vertex_map
        left: dict = {}
        right: dict = {}
        for c in by_simplex.get(s, []):
            mu = restrict(cells[c].partition, i)
            if mu is not None:
                left.setdefault(image_partition(p, mu), []).append(c)
        for c in by_simplex.get(t, []):
            mu = restrict(cells[c].partition, j)
            if mu is not None:
                right.setdefault(mu, []).append(c)
        for mu in sorted(set(left) | set(right)):
            L, R = list(left.get(mu, [])), list(right.get(mu, []))
            if len(L) != len(R):
                raise InadmissibleSolution(f"unequal piece counts across facet pair {(s, i)}-{(t, j)}")
            for c in list(L):
                d = cell_of.get((t, image_partition(p, cells[c].partition)))
                if d is not None and d in R:
                    L.remove(c)
                    R.remove(d)
                    pairing[(c, i)] = (d, j)
                    pairing[(d, j)] = (c, i)
            for c, d in zip(sorted(L), sorted(R)):
                pairing[(c, i)] = (d, j)
                pairing[(d, j)] = (c, i)
    uf = UnionFind(range(len(cells)))
    for (c, _), (d, _) in pairing.items():
        uf.union(c, d)
    comps = tuple(tuple(sorted(g)) for g in uf.groups())
    return Hypersurface(T.dim, cells, pairing, comps)


@dataclass(frozen=True)
class BranchRecord:
    orbit: int
    degree: int
    circuits: tuple[int, ...]

    @property
    def branched(self) -> bool:
        return any(c > 1 for c in self.circuits)

    def to_json(self) -> dict:
        return {"orbit": self.orbit, "degree": self.degree, "circuits": list(self.circuits)}


def _splits(part: Partition, face) -> bool:
    fa = set(face)
    return bool(fa & set(part[0])) and bool(fa & set(part[1]))


def rotation_report(T: Triangulation, H: Hypersurface) -> list[BranchRecord]:
    """For each (n-2)-orbit, how many full circuits each transverse cell needs to return."""
    n = T.dim
    cell_of = {}
    for c, d in enumerate(H.cells):
        cell_of.setdefault(d.simplex, []).append(c)
    out = []
    for orbit in face_orbits(T, n - 2).orbits:
        s, face = orbit.incidences[0]
        a, b = sorted(set(range(n + 1)) - set(face))
        _, steps = walk_around(T, s, a, b)
        start = [c for c in cell_of.get(s, []) if _splits(H.cells[c].partition, face)]

        def one_circuit(c):
            state = (s, a, b)
            for _ in range(steps):
                cur, x, y = state
                c, _ = H.pairing[(c, x)]
                p = T.gluing(cur, x).vertex_map
                state = (T.gluing(cur, x).target_simplex, p(y), p(x))
            return c

        step = {c: one_circuit(c) for c in start}
        seen = set()
        circuits = []
        for c in start:
            if c in seen:
                continue
            length, cur = 0, c
            while True:
                seen.add(cur)
                cur = step[cur]
                length += 1
                if cur == c:
                    break
            circuits.append(length)
        out.append(BranchRecord(orbit.index, orbit.degree, tuple(circuits)))
    return out


def branch_locus(T: Triangulation, H: Hypersurface) -> list[BranchRecord]:
    """(n-2)-orbits around which some cell fails to close up after one circuit."""
    return [r for r in rotation_report(T, H) if r.branched]


def compatible(p: Partition, q: Partition) -> bool:
    """Two splits are compatible when a side of one contains a side of the other."""
    a, b = set(p[0]), set(p[1])
    return any(set(side) <= a or set(side) <= b for side in q)


def embedding_check(x: NormalCoordinate) -> tuple[bool, tuple[NormalDiscType, NormalDiscType] | None]:
    per: dict[int, list[NormalDiscType]] = {}
    for d, _ in x.support():
        per.setdefault(d.simplex, []).append(d)
    for discs in per.values():
        for u, v in combinations(discs, 2):
            if not compatible(u.partition, v.partition):
                return False, (u, v)
    return True, None


def component_embedded(H: Hypersurface, comp: Sequence[int]) -> bool:
    per: dict[int, list[Partition]] = {}
    for c in comp:
        per.setdefault(H.cells[c].simplex, []).append(H.cells[c].partition)
    return all(compatible(p, q) for parts in per.values() for p, q in combinations(parts, 2))


@dataclass(frozen=True)
class Correspondence:
    k: int
    components: int
    embedded_components: int
    image_orbits: int
    fixed_classes: int
    consistent: bool
    induced_image: object

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "components": self.components,
            "embedded_components": self.embedded_components,
            "image_orbits": self.image_orbits,
            "fixed_classes": self.fixed_classes,
            "consistent": self.consistent,
            "induced_image": self.induced_image.to_json(),
        }


def component_rep_correspondence(T: Triangulation, rep=None, k: int = 2, H: Hypersurface | None = None) -> Correspondence:
    """Compare components of the canonical hypersurface with orbits of the induced image.

    Consistency means the base-simplex classes met by each component are
    exactly one orbit, and a component is embedded iff its orbit is a fixed class.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if rep is None:
        rep = canonical_representation(T)
    ind = induced_representation(rep, k)
    if H is None:
        H = assemble_hypersurface(T, canonical_solution(T, k))
    orbits = point_orbits(list(ind.image.elements))
    fixed = sum(1 for o in orbits if len(o) == 1)
    cls_index = {c: i for i, c in enumerate(ind.classes)}
    met = []
    embedded = 0
    for comp in H.components:
        met.append(sorted(cls_index[H.cells[c].partition] for c in comp if H.cells[c].simplex == rep.base))
        embedded += component_embedded(H, comp)
    consistent = sorted(met) == sorted(orbits) and embedded == fixed
    for comp, classes in zip(H.components, met):
        if component_embedded(H, comp) != (len(classes) == 1):
            consistent = False
    return Correspondence(k, len(H.components), embedded, len(orbits), fixed, consistent, ind.image)


# -- surfaces (dimension 3) -----------------------------------------------------


def _corner_cycle(part: Partition) -> list[tuple[int, int]]:
    """Reference cyclic order of the corners of a triangle or quadrilateral."""
    a, b = part
    if len(a) == 1:
        v = a[0]
        return [tuple(sorted((v, w))) for w in b]
    (a1, a2), (b1, b2) = a, b
    return [tuple(sorted(e)) for e in ((a1, b1), (a1, b2), (a2, b2), (a2, b1))]


def _arc(part: Partition, i: int) -> tuple[tuple[int, int], tuple[int, int], int]:
    """Corners of the piece on facet ``i`` in cycle order, and +1 if forward in the reference cycle."""
    cyc = _corner_cycle(part)
    on = [e for e in cyc if i not in e]
    p, q = on
    ip, iq = cyc.index(p), cyc.index(q)
    if (ip + 1) % len(cyc) == iq:
        return p, q, 1
    return p, q, -1


@dataclass(frozen=True)
class SurfaceData:
    cells: int
    chi: int
    orientable: bool
    two_sided: bool
    label: str

    def to_json(self) -> dict:
        return {"cells": self.cells, "chi": self.chi, "orientable": self.orientable, "two_sided": self.two_sided, "label": self.label}


def surface_label(chi: int, orientable: bool) -> str:
    if orientable:
        if chi == 2:
            return "sphere"
        if chi == 0:
            return "torus"
        if chi % 2 == 0 and chi < 0:
            return f"orientable genus {(2 - chi) // 2}"
        return f"orientable, chi {chi}"
    if chi == 1:
        return "projective plane"
    if chi == 0:
        return "Klein bottle"
    if chi < 0:
        return f"non-orientable genus {2 - chi}"
    return f"non-orientable, chi {chi}"


def surface_analysis(T: Triangulation, H: Hypersurface) -> list[SurfaceData]:
    """Euler characteristic, orientability and sidedness of each component (dimension 3)."""
    if T.dim != 3:
        raise UnsupportedDimension(f"surface analysis needs dimension 3, got {T.dim}")
    out = []
    for comp in H.components:
        cells = set(comp)
        corners = UnionFind()
        orient = UnionFind(comp)
        side = UnionFind(comp)
        edges = 0
        for c in comp:
            for e in _corner_cycle(H.cells[c].partition):
                corners.add((c, e))
        for (c, i), (d, j) in H.pairing.items():
            if c not in cells:
                continue
            edges += 1
            s = H.cells[c].simplex
            p = T.gluing(s, i).vertex_map
            part_c, part_d = H.cells[c].partition, H.cells[d].partition
            pc, qc, dir_c = _arc(part_c, i)
            for e in (pc, qc):
                corners.union((c, e), (d, tuple(sorted(p(v) for v in e))))
            pd, qd, dir_d = _arc(part_d, j)
            mapped = (tuple(sorted(p(v) for v in pc)), tuple(sorted(p(v) for v in qc)))
            dd = dir_d if mapped == (pd, qd) else -dir_d
            # orientations o, o' must satisfy o*dir_c == -o'*dd
            orient.union(c, d, 0 if dir_c * dd == -1 else 1)
            a_side = {p(v) for v in part_c[0] if v != i}
            side.union(c, d, 0 if a_side <= set(part_d[0]) else 1)
        E = edges // 2
        V = len(corners.groups())
        F = len(comp)
        chi = V - E + F
        orientable = not orient.conflict
        two_sided = not side.conflict
        out.append(SurfaceData(F, chi, orientable, two_sided, surface_label(chi, orientable)))
    return out


def z2_rank_bound(T: Triangulation, rep=None) -> int:
    """Largest k > 1 with trivial induced image, for even one-vertex input; otherwise 0."""
    if T.dim < 3 or not is_even(T)[0] or vertex_count(T) != 1:
        return 0
    if rep is None:
        rep = canonical_representation(T)
    for k in range((T.dim + 1) // 2, 1, -1):
        if induced_representation(rep, k).image.is_trivial:
            return k
    return 0


def hypersurface_report(T: Triangulation, k: int = 2, rep=None, surfaces: bool = True) -> dict:
    """JSON-ready summary of the canonical hypersurface of type ``k``."""
    H = assemble_hypersurface(T, canonical_solution(T, k))
    even = is_even(T)[0]
    branched = [r.to_json() for r in branch_locus(T, H)] if k > 1 else []
    data = surface_analysis(T, H) if surfaces and T.dim == 3 else None
    induced = None
    if even and k > 1 and T.dim >= 3:
        if rep is None:
            rep = canonical_representation(T)
        induced = induced_representation(rep, k).image.to_json()
    comps = []
    for idx, comp in enumerate(H.components):
        entry = {"cells": len(comp), "embedded": component_embedded(H, comp)}
        sd = data[idx] if data else None
        entry.update(
            chi=sd.chi if sd else None,
            orientable=sd.orientable if sd else None,
            two_sided=sd.two_sided if sd else None,
            label=sd.label if sd else None,
        )
        comps.append(entry)
    return {"k": k, "components": comps, "branched_orbits": branched, "induced_image": induced}
