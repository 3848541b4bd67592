"""Face-pairing tables of closed pseudo-manifolds and their skeleton quotients.

A triangulation of dimension ``n`` is a list of ``N`` abstract n-simplices with
corners ``0..n``. Facet ``i`` of a simplex is the facet opposite corner ``i``.
Each facet is paired with a facet of some simplex by a full permutation of
``{0..n}``; the permutation sends corner ``i`` to the opposite corner of the
target facet, so the target facet index is ``perm(i)``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from typing import Iterator, Sequence

from eventri._uf import UnionFind
from eventri.errors import InvalidTriangulation, UnsupportedDimension
from eventri.perm import Permutation

Face = tuple[int, ...]
Incidence = tuple[int, Face]
FacetRef = tuple[int, int]


@dataclass(frozen=True)
class Gluing:
    target_simplex: int
    vertex_map: Permutation


@dataclass(frozen=True)
class Triangulation:
    dim: int
    gluings: tuple[tuple[Gluing, ...], ...]
    allow_disconnected: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "gluings", tuple(tuple(row) for row in self.gluings))
        self._validate()

    @property
    def num_simplices(self) -> int:
        return len(self.gluings)

    @classmethod
    def from_table(cls, dim: int, table, allow_disconnected: bool = False) -> "Triangulation":
        """Build from ``table[s][i] = (target_simplex, perm_list)``."""
        rows = []
        for row in table:
            rows.append(tuple(Gluing(int(t), Permutation(tuple(p))) for t, p in row))
        return cls(dim, tuple(rows), allow_disconnected)

    def gluing(self, s: int, i: int) -> Gluing:
        return self.gluings[s][i]

    def partner(self, s: int, i: int) -> FacetRef:
        g = self.gluings[s][i]
        return g.target_simplex, g.vertex_map(i)

    def facets(self) -> Iterator[FacetRef]:
        for s in range(self.num_simplices):
            for i in range(self.dim + 1):
                yield s, i

    def _validate(self) -> None:
        n = self.dim
        if n < 2:
            raise InvalidTriangulation("dimension", f"dimension must be at least 2, got {n}")
        if not self.gluings:
            raise InvalidTriangulation("syntax", "triangulation has no simplices")
        N = len(self.gluings)
        for s, row in enumerate(self.gluings):
            if len(row) != n + 1:
                raise InvalidTriangulation(
                    "unglued", f"simplex {s} lists {len(row)} facets, expected {n + 1}", simplex=s
                )
            for i, g in enumerate(row):
                if g is None:
                    raise InvalidTriangulation("unglued", f"facet {i} of simplex {s} is unglued", s, i)
                if len(g.vertex_map) != n + 1:
                    raise InvalidTriangulation(
                        "syntax", f"facet {i} of simplex {s}: permutation has wrong length", s, i
                    )
                if not 0 <= g.target_simplex < N:
                    raise InvalidTriangulation(
                        "syntax", f"facet {i} of simplex {s}: target simplex {g.target_simplex} out of range", s, i
                    )
        for s, row in enumerate(self.gluings):
            for i, g in enumerate(row):
                t, j = g.target_simplex, g.vertex_map(i)
                if (t, j) == (s, i):
                    raise InvalidTriangulation(
                        "self_gluing", f"facet {i} of simplex {s} is glued to itself", s, i
                    )
                back = self.gluings[t][j]
                if back.target_simplex != s or back.vertex_map != g.vertex_map.inverse():
                    raise InvalidTriangulation(
                        "involution",
                        f"facet {i} of simplex {s} -> facet {j} of simplex {t}, "
                        f"but the reverse gluing is not the inverse map",
                        s,
                        i,
                    )
        if not self.allow_disconnected and len(dual_components(self)) != 1:
            raise InvalidTriangulation("disconnected", "dual graph is not connected")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "simplices": self.num_simplices,
            "gluings": [
                [{"s": g.target_simplex, "perm": g.vertex_map.to_list()} for g in row] for row in self.gluings
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def parse_triangulation(text: bytes | str, allow_disconnected: bool = False) -> Triangulation:
    """Parse the JSON gluing-table format and validate every axiom."""
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidTriangulation("syntax", f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidTriangulation("syntax", "top level must be an object")
    for key in ("dim", "simplices", "gluings"):
        if key not in data:
            raise InvalidTriangulation("syntax", f"missing key {key!r}")
    dim, count, table = data["dim"], data["simplices"], data["gluings"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InvalidTriangulation("syntax", "dim must be an integer")
    if dim < 2:
        raise InvalidTriangulation("dimension", f"dimension must be at least 2, got {dim}")
    if not isinstance(table, list) or len(table) != count:
        raise InvalidTriangulation("syntax", f"expected {count} rows of gluings")
    rows = []
    for s, row in enumerate(table):
        if not isinstance(row, list):
            raise InvalidTriangulation("syntax", f"gluings of simplex {s} must be a list", simplex=s)
        if len(row) != dim + 1:
            raise InvalidTriangulation(
                "unglued", f"simplex {s} lists {len(row)} facets, expected {dim + 1}", simplex=s
            )
        out = []
        for i, entry in enumerate(row):
            if entry is None:
                raise InvalidTriangulation("unglued", f"facet {i} of simplex {s} is unglued", s, i)
            try:
                target = entry["s"]
                perm = Permutation(tuple(entry["perm"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidTriangulation("syntax", f"facet {i} of simplex {s}: {exc}", s, i) from None
            if not isinstance(target, int) or isinstance(target, bool):
                raise InvalidTriangulation("syntax", f"facet {i} of simplex {s}: bad target", s, i)
            out.append(Gluing(target, perm))
        rows.append(tuple(out))
    return Triangulation(dim, tuple(rows), allow_disconnected)


# -- skeleton quotients ---------------------------------------------------------


@dataclass(frozen=True)
class FaceOrbit:
    dim: int
    index: int
    incidences: tuple[Incidence, ...]

    @property
    def degree(self) -> int:
        return len(self.incidences)


@dataclass(frozen=True)
class FaceOrbitTable:
    k: int
    orbits: tuple[FaceOrbit, ...]
    lookup: dict = field(compare=False, repr=False)

    def degrees(self) -> list[int]:
        return [o.degree for o in self.orbits]

    def orbit_of(self, s: int, face: Sequence[int]) -> int:
        return self.lookup[(s, tuple(sorted(face)))]


def face_orbits(T: Triangulation, k: int) -> FaceOrbitTable:
    """Orbits of k-faces of the simplices under the facet gluings."""
    n = T.dim
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}, got {k}")
    uf = UnionFind()
    faces = list(combinations(range(n + 1), k + 1))
    for s in range(T.num_simplices):
        for f in faces:
            uf.add((s, f))
    for s, i in T.facets():
        g = T.gluing(s, i)
        for f in faces:
            if i in f:
                continue
            image = tuple(sorted(g.vertex_map(v) for v in f))
            uf.union((s, f), (g.target_simplex, image))
    groups = sorted((sorted(grp) for grp in uf.groups()), key=lambda grp: grp[0])
    orbits = tuple(FaceOrbit(k, idx, tuple(grp)) for idx, grp in enumerate(groups))
    lookup = {inc: o.index for o in orbits for inc in o.incidences}
    return FaceOrbitTable(k, orbits, lookup)


def vertex_count(T: Triangulation) -> int:
    return len(face_orbits(T, 0).orbits)


def is_even(T: Triangulation) -> tuple[bool, FaceOrbit | None]:
    """True iff every (n-2)-orbit has even degree; otherwise the first odd orbit."""
    for orbit in face_orbits(T, T.dim - 2).orbits:
        if orbit.degree % 2:
            return False, orbit
    return True, None


# -- dual graph -------------------------------------------------------------------


@dataclass(frozen=True)
class DualEdge:
    index: int
    a: FacetRef
    b: FacetRef

    def other(self, end: FacetRef) -> FacetRef:
        return self.b if end == self.a else self.a

    @property
    def is_loop(self) -> bool:
        return self.a[0] == self.b[0]


@dataclass(frozen=True)
class DualGraph:
    """Dual 1-skeleton with a breadth-first spanning tree.

    Each non-base simplex hangs from the tree through the lowest-numbered of its
    facets that leads one level closer to the base.
    """

    base: int
    num_nodes: int
    edges: tuple[DualEdge, ...]
    edge_of: dict = field(compare=False, repr=False)
    depth: tuple[int, ...] = ()
    parent_facet: tuple[int | None, ...] = ()
    order: tuple[int, ...] = ()

    @property
    def tree_edges(self) -> frozenset[int]:
        out = set()
        for s, j in enumerate(self.parent_facet):
            if j is not None:
                out.add(self.edge_of[(s, j)])
        return frozenset(out)

    @property
    def spanning_tree(self) -> list[DualEdge]:
        return [self.edges[e] for e in sorted(self.tree_edges)]

    def non_tree_edges(self) -> list[DualEdge]:
        tree = self.tree_edges
        return [e for e in self.edges if e.index not in tree]

    def oriented(self, edge: DualEdge) -> tuple[FacetRef, FacetRef]:
        """Traversal direction used for generators.

        An edge is crossed starting from the endpoint nearer the base; between
        endpoints at equal depth, from the larger (simplex, facet).
        """
        ka = (-self.depth[edge.a[0]], edge.a)
        kb = (-self.depth[edge.b[0]], edge.b)
        return (edge.a, edge.b) if ka > kb else (edge.b, edge.a)


def dual_components(T: Triangulation) -> list[list[int]]:
    uf = UnionFind(range(T.num_simplices))
    for s, row in enumerate(T.gluings):
        for g in row:
            uf.union(s, g.target_simplex)
    return [sorted(grp) for grp in uf.groups()]


def dual_graph(T: Triangulation, base: int = 0) -> DualGraph:
    N = T.num_simplices
    if not 0 <= base < N:
        raise ValueError(f"base simplex {base} out of range 0..{N - 1}")
    edges = []
    edge_of = {}
    for s, i in T.facets():
        if (s, i) in edge_of:
            continue
        other = T.partner(s, i)
        e = DualEdge(len(edges), (s, i), other)
        edges.append(e)
        edge_of[(s, i)] = e.index
        edge_of[other] = e.index

    depth = [-1] * N
    depth[base] = 0
    queue = deque([base])
    order = [base]
    while queue:
        s = queue.popleft()
        for i in range(T.dim + 1):
            t = T.gluing(s, i).target_simplex
            if depth[t] < 0:
                depth[t] = depth[s] + 1
                queue.append(t)
                order.append(t)
    if min(depth) < 0 and not T.allow_disconnected:
        raise ValueError("dual graph is not connected")
    parent = []
    for t in range(N):
        if t == base or depth[t] < 0:
            parent.append(None)
            continue
        parent.append(
            min(j for j in range(T.dim + 1) if depth[T.gluing(t, j).target_simplex] == depth[t] - 1)
        )
    order.sort(key=lambda s: (depth[s], s))
    return DualGraph(base, N, tuple(edges), edge_of, tuple(depth), tuple(parent), tuple(order))


# -- orientation and links ----------------------------------------------------------


def orientation_signs(T: Triangulation) -> list[int] | None:
    """Signs making every gluing orientation-reversing, or None if impossible.

    Propagated per dual component; each component's smallest simplex gets +1.
    """
    signs = [0] * T.num_simplices
    for comp in dual_components(T):
        signs[comp[0]] = 1
        queue = deque([comp[0]])
        while queue:
            s = queue.popleft()
            for i in range(T.dim + 1):
                g = T.gluing(s, i)
                want = -g.vertex_map.sign() * signs[s]
                t = g.target_simplex
                if signs[t] == 0:
                    signs[t] = want
                    queue.append(t)
                elif signs[t] != want:
                    return None
    return signs


def orientability(T: Triangulation) -> bool:
    return orientation_signs(T) is not None


def vertex_link_euler(T: Triangulation) -> list[int]:
    """Euler characteristic of each vertex link (3-dimensional input only).

    The link of a vertex orbit is assembled from one triangle per corner
    incidence; link vertices are orbits of edge-ends at that vertex.
    """
    if T.dim != 3:
        raise UnsupportedDimension(f"vertex links are implemented for dimension 3 only, got {T.dim}")
    verts = face_orbits(T, 0)
    ends = UnionFind()
    for s in range(T.num_simplices):
        for v in range(4):
            for w in range(4):
                if v != w:
                    ends.add((s, v, w))
    for s, i in T.facets():
        g = T.gluing(s, i)
        p = g.vertex_map
        for v in range(4):
            for w in range(4):
                if v != w and i not in (v, w):
                    ends.union((s, v, w), (g.target_simplex, p(v), p(w)))
    link_vertices = [0] * len(verts.orbits)
    for grp in ends.groups():
        s, v, _ = grp[0]
        link_vertices[verts.orbit_of(s, (v,))] += 1
    out = []
    for orbit in verts.orbits:
        F = orbit.degree
        E = 3 * F // 2
        out.append(link_vertices[orbit.index] - E + F)
    return out


# -- generators ------------------------------------------------------------------


def make_double_simplex(n: int) -> Triangulation:
    """Two n-simplices with facet i of one glued to facet i of the other by the identity."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    ident = Permutation.identity(n + 1)
    return Triangulation(n, ((Gluing(1, ident),) * (n + 1), (Gluing(0, ident),) * (n + 1)))


def make_cross_polytope_boundary(n: int) -> Triangulation:
    """Boundary of the (n+1)-dimensional cross-polytope as an n-dimensional triangulation.

    Simplex ``s`` (a bit mask) has corner ``i`` at ``+e_i`` or ``-e_i`` according
    to bit ``i``; facet ``i`` is glued by the identity to the simplex with bit
    ``i`` flipped. For ``n = 2`` this is the octahedron.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    ident = Permutation.identity(n + 1)
    rows = []
    for s in range(2 ** (n + 1)):
        rows.append(tuple(Gluing(s ^ (1 << i), ident) for i in range(n + 1)))
    return Triangulation(n, tuple(rows))


FIXTURES = ("quaternion", "l41", "fig8", "l31", "double3", "s3_odd", "cross3", "binary_tetrahedral")


def load_fixture(name: str) -> Triangulation:
    """Load a bundled example triangulation by stem (e.g. ``"fig8"``)."""
    path = resources.files("eventri").joinpath(f"fixtures/{name}.json")
    return parse_triangulation(path.read_bytes())
