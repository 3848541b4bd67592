"""Perspectivities, projectivities and the symmetric representations they define.

Corner labels are carried from simplex to simplex by the gluing permutations.
Composing them around a loop in the dual graph gives a permutation of the base
simplex's corners; for even triangulations this is a homomorphism from the
fundamental group of the vertex complement.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product

from eventri import combinat
from eventri.errors import Dim2Unsupported, NonTrivialImage, NotEven, PreconditionError
from eventri.groups import GroupClass, classify, closure
from eventri.perm import Permutation
from eventri.triangulation import (
    DualGraph,
    FacetRef,
    Triangulation,
    dual_graph,
    face_orbits,
    is_even,
)

ELEMENT_LIST_LIMIT = 120


def perspectivity(T: Triangulation, s: int, i: int) -> Permutation:
    """Corner relabelling across facet ``i`` of simplex ``s``."""
    if not (0 <= s < T.num_simplices and 0 <= i <= T.dim):
        raise IndexError(f"no facet {i} on simplex {s}")
    return T.gluing(s, i).vertex_map


@dataclass(frozen=True)
class FacetPath:
    """Alternating facet sequence ``(t0, t1', t1, t2', ..., t_{k+1}')``.

    Consecutive pairs ``(t_j, t_{j+1}')`` are glued facets; ``(t_j', t_j)`` are
    two distinct facets of one simplex. An empty path is the constant loop at
    ``start``.
    """

    steps: tuple[FacetRef, ...]
    start: int = 0

    @classmethod
    def through(cls, T: Triangulation, start: int, exits) -> "FacetPath":
        """Path leaving ``start`` through each facet listed in ``exits`` in turn."""
        seq: list[FacetRef] = []
        s = start
        for i in exits:
            seq.append((s, i))
            s, j = T.partner(s, i)
            seq.append((s, j))
        return cls(tuple(seq), start)

    def validate(self, T: Triangulation) -> None:
        seq = self.steps
        if len(seq) % 2:
            raise ValueError("facet path must have even length")
        for j in range(0, len(seq), 2):
            if T.partner(*seq[j]) != seq[j + 1]:
                raise ValueError(f"step {j // 2}: {seq[j]} is not glued to {seq[j + 1]}")
            if j and (seq[j - 1][0] != seq[j][0] or seq[j - 1][1] == seq[j][1]):
                raise ValueError(f"step {j // 2}: must leave through a different facet of the same simplex")

    def is_loop(self) -> bool:
        return not self.steps or self.steps[0][0] == self.steps[-1][0]


def projectivity(T: Triangulation, path: FacetPath) -> Permutation:
    path.validate(T)
    out = Permutation.identity(T.dim + 1)
    for s, i in path.steps[::2]:
        out = perspectivity(T, s, i) * out
    return out


def tree_transports(T: Triangulation, graph: DualGraph) -> list[Permutation | None]:
    """For each simplex, the projectivity along the tree from the base to it."""
    out: list[Permutation | None] = [None] * T.num_simplices
    out[graph.base] = Permutation.identity(T.dim + 1)
    for s in graph.order:
        j = graph.parent_facet[s]
        if j is None:
            continue
        parent, i = T.partner(s, j)
        out[s] = perspectivity(T, parent, i) * out[parent]
    return out


@dataclass(frozen=True)
class WalkAround:
    orbit: int
    start: tuple[int, int, int]
    steps: int
    perm: Permutation


def walk_around(T: Triangulation, s: int, a: int, b: int) -> tuple[Permutation, int]:
    """Projectivity of the facet loop circling the (n-2)-face of ``s`` missing ``a`` and ``b``.

    The walk leaves through facet ``a``; in the next simplex the entry facet
    and the face's other missing corner swap roles. Returns the composite
    permutation and the number of steps taken.
    """
    state = (s, a, b)
    W = Permutation.identity(T.dim + 1)
    steps = 0
    while True:
        cur, x, y = state
        p = perspectivity(T, cur, x)
        W = p * W
        state = (T.gluing(cur, x).target_simplex, p(y), p(x))
        steps += 1
        if state == (s, a, b):
            return W, steps


def walk_arounds(T: Triangulation) -> list[WalkAround]:
    n = T.dim
    out = []
    for orbit in face_orbits(T, n - 2).orbits:
        s, face = orbit.incidences[0]
        a, b = sorted(set(range(n + 1)) - set(face))
        perm, steps = walk_around(T, s, a, b)
        out.append(WalkAround(orbit.index, (s, a, b), steps, perm))
    return out


def singular_faces(T: Triangulation) -> list[WalkAround]:
    """(n-2)-orbits identified with themselves by a non-trivial symmetry.

    Such a face makes the quotient fail to be a pseudo-manifold (its interior
    points are singular); the circuit around it moves one of its own corners.
    """
    out = []
    for w in walk_arounds(T):
        s, a, b = w.start
        if any(w.perm(v) != v for v in range(T.dim + 1) if v not in (a, b)):
            out.append(w)
    return out


@dataclass(frozen=True)
class Generator:
    edge: tuple[int, int, int, int]
    perm: Permutation

    def to_json(self) -> dict:
        return {"edge": list(self.edge), "perm": self.perm.to_list()}


@dataclass(frozen=True)
class Image:
    elements: tuple[Permutation, ...]
    group: GroupClass

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def label(self) -> str:
        return self.group.label

    @property
    def is_trivial(self) -> bool:
        return self.group.order == 1

    def to_json(self) -> dict:
        out = {"order": self.order, "label": self.label}
        if self.order <= ELEMENT_LIST_LIMIT:
            out["elements"] = [g.to_list() for g in self.elements]
        out["transitive"] = self.group.transitive
        if self.group.abelian_invariants is not None:
            out["abelian_invariants"] = list(self.group.abelian_invariants)
        return out


def make_image(gens, degree: int) -> Image:
    elements = closure(gens, degree)
    return Image(tuple(elements), classify(elements, list(gens)))


@dataclass(frozen=True)
class RepReport:
    """A permutation representation given on dual-graph loop generators.

    ``classes`` is None for the canonical representation (acting on the base
    simplex's corners) and the ordered partition list for an induced one.
    """

    dim: int
    base: int
    even: bool
    generators: tuple[Generator, ...]
    relator_checks: tuple[WalkAround, ...]
    image: Image
    k: int | None = None
    classes: tuple | None = None
    graph: DualGraph | None = field(default=None, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(self.classes) if self.classes is not None else self.dim + 1

    def perms(self) -> list[Permutation]:
        return [g.perm for g in self.generators]

    def to_json(self) -> dict:
        out = {
            "base": self.base,
            "even": self.even,
            "generators": [g.to_json() for g in self.generators],
            "image": self.image.to_json(),
        }
        if self.k is not None:
            out["k"] = self.k
            out["classes"] = [[list(a), list(b)] for a, b in self.classes]
        else:
            out["relator_checks"] = [
                {"orbit": w.orbit, "start": list(w.start), "steps": w.steps, "perm": w.perm.to_list()}
                for w in self.relator_checks
            ]
        return out


class SingularFace(PreconditionError):
    """Even triangulation whose walk-around some (n-2)-face is not the identity.

    This happens only when a face is identified with itself by a non-trivial
    symmetry, so the quotient is not a pseudo-manifold in the required sense.
    """


def canonical_representation(T: Triangulation, base: int = 0) -> RepReport:
    if T.dim < 3:
        raise Dim2Unsupported("representations are defined for dimension 3 and up")
    even, witness = is_even(T)
    if not even:
        raise NotEven(witness)
    checks = walk_arounds(T)
    bad = [w for w in checks if not w.perm.is_identity()]
    if bad:
        raise SingularFace(f"walk-around (n-2)-orbit {bad[0].orbit} acts as {bad[0].perm}")
    graph = dual_graph(T, base)
    transport = tree_transports(T, graph)
    gens = []
    for edge in graph.non_tree_edges():
        (s, i), (t, j) = graph.oriented(edge)
        g = transport[t].inverse() * perspectivity(T, s, i) * transport[s]
        gens.append(Generator((s, i, t, j), g))
    image = make_image([g.perm for g in gens], T.dim + 1)
    return RepReport(T.dim, base, True, tuple(gens), tuple(checks), image, graph=graph)


def quad_classes(n: int, k: int) -> list[combinat.Partition]:
    return combinat.partitions(n + 1, k)


def induced_representation(rep: RepReport, k: int) -> RepReport:
    """Action of ``rep`` on normalized partitions of the corners into k and n-k+1."""
    if rep.k is not None:
        raise ValueError("induce from the canonical representation")
    n = rep.dim
    if not 2 <= k <= (n + 1) // 2:
        raise ValueError(f"k must lie in 2..{(n + 1) // 2}, got {k}")
    classes = quad_classes(n, k)
    index = {c: i for i, c in enumerate(classes)}
    gens = tuple(Generator(g.edge, combinat.induced_permutation(g.perm, classes, index)) for g in rep.generators)
    image = make_image([g.perm for g in gens], len(classes))
    return RepReport(n, rep.base, rep.even, gens, rep.relator_checks, image, k, tuple(classes), rep.graph)


KLEIN_INVOLUTIONS = tuple(Permutation.from_cycles(c, 4) for c in ("(01)(23)", "(02)(13)", "(03)(12)"))


def klein_quotient(p: Permutation) -> Permutation:
    """Image of ``p`` in Sym(3) via conjugation on the three fixed-point-free involutions."""
    return Permutation(tuple(KLEIN_INVOLUTIONS.index(p * x * p.inverse()) for x in KLEIN_INVOLUTIONS))


def klein_factor_check(rep: RepReport) -> bool:
    """Generator-wise comparison of the (2,2)-induced action with the Klein quotient."""
    if rep.dim != 3:
        raise ValueError("the Klein factorization concerns dimension 3")
    induced = induced_representation(rep, 2)
    # class {A,B} with A = {0,x} corresponds to the involution swapping 0 and x
    order = [KLEIN_INVOLUTIONS.index(Permutation.from_cycles(f"(0{a[1]})({''.join(map(str, b))})", 4))
             for a, b in induced.classes]
    relabel = Permutation(tuple(order))
    for g, h in zip(rep.generators, induced.generators):
        if relabel * h.perm * relabel.inverse() != klein_quotient(g.perm):
            return False
    return True


def _words(rep: RepReport):
    """Breadth-first enumeration of image elements with a shortest generator word."""
    m = rep.degree
    ident = Permutation.identity(m)
    words = {ident: ()}
    queue = deque([ident])
    letters = []
    for idx, g in enumerate(rep.generators):
        letters.append(((idx, 1), g.perm))
        letters.append(((idx, -1), g.perm.inverse()))
    while queue:
        h = queue.popleft()
        for letter, g in letters:
            x = g * h
            if x not in words:
                words[x] = words[h] + (letter,)
                queue.append(x)
    return words


@dataclass(frozen=True)
class VertexWitness:
    corners: tuple[int, int]
    word: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"corners": list(self.corners), "word": [list(w) for w in self.word]}


def vertex_orbit_witness(T: Triangulation, rep: RepReport) -> list[VertexWitness]:
    """For corners of the base simplex that are the same vertex, a loop carrying one to the other.

    The word lists ``(generator index, ±1)`` letters, applied left to right.
    """
    verts = face_orbits(T, 0)
    base = rep.base
    words = _words(rep)
    out = []
    for v, w in combinations(range(T.dim + 1), 2):
        if verts.orbit_of(base, (v,)) != verts.orbit_of(base, (w,)):
            continue
        word = next((wd for g, wd in words.items() if g(v) == w), None)
        if word is None:
            raise AssertionError(f"corners {v} and {w} share a vertex but no loop relates them")
        out.append(VertexWitness((v, w), word))
    return out


@dataclass(frozen=True)
class VertexLabelling:
    vertex_labels: tuple[int, ...]
    corner_labels: tuple[tuple[int, ...], ...]

    def proper(self, T: Triangulation) -> bool:
        return all(len(set(row)) == T.dim + 1 for row in self.corner_labels)

    def to_json(self) -> dict:
        return {"vertex_labels": list(self.vertex_labels), "corner_labels": [list(r) for r in self.corner_labels]}


def vertex_labelling(T: Triangulation, rep: RepReport | None = None) -> VertexLabelling:
    """Label every vertex by the base corner it is carried to along the tree."""
    if rep is None:
        rep = canonical_representation(T)
    if not rep.image.is_trivial:
        raise NonTrivialImage(rep.image)
    transport = tree_transports(T, rep.graph or dual_graph(T, rep.base))
    corner_labels = tuple(tuple(transport[s].inverse()(c) for c in range(T.dim + 1)) for s in range(T.num_simplices))
    verts = face_orbits(T, 0)
    labels = []
    for orbit in verts.orbits:
        seen = {corner_labels[s][f[0]] for s, f in orbit.incidences}
        if len(seen) != 1:
            raise AssertionError(f"vertex {orbit.index} received labels {sorted(seen)}")
        labels.append(seen.pop())
    return VertexLabelling(tuple(labels), corner_labels)


@dataclass(frozen=True)
class HakenReport:
    ok: bool
    shared_pairs: tuple = ()
    loops: tuple = ()
    missing_triangles: tuple = ()
    bigons: tuple = ()

    def to_json(self) -> dict:
        return {
            "haken": self.ok,
            "loops": list(self.loops),
            "shared_pairs": [list(p) for p in self.shared_pairs],
            "missing_triangles": [list(t) for t in self.missing_triangles],
            "degree_two_edges": list(self.bigons),
        }


def haken_cell_check(T: Triangulation, rep: RepReport | None = None) -> HakenReport:
    """1-skeleton conditions: no two edges share both endpoints, and every
    triangle of edges bounds a 2-face.

    Degree-two edges are reported separately for information; they do not
    affect the verdict.
    """
    if rep is None:
        rep = canonical_representation(T)
    if not rep.image.is_trivial:
        raise NonTrivialImage(rep.image)
    verts = face_orbits(T, 0)
    edges = face_orbits(T, 1)
    tris = face_orbits(T, 2)
    ends = []
    for e in edges.orbits:
        s, (a, b) = e.incidences[0]
        ends.append(tuple(sorted((verts.orbit_of(s, (a,)), verts.orbit_of(s, (b,))))))
    loops = tuple(i for i, (a, b) in enumerate(ends) if a == b)
    by_pair: dict = {}
    for i, pair in enumerate(ends):
        if pair[0] != pair[1]:
            by_pair.setdefault(pair, []).append(i)
    shared = tuple((pair, tuple(ix)) for pair, ix in sorted(by_pair.items()) if len(ix) > 1)
    faces = set()
    for t in tris.orbits:
        s, (a, b, c) = t.incidences[0]
        faces.add(frozenset(edges.orbit_of(s, pair) for pair in ((a, b), (a, c), (b, c))))
    missing = []
    for x, y, z in combinations(range(len(verts.orbits)), 3):
        choices = [by_pair.get(p, []) for p in ((x, y), (x, z), (y, z))]
        for combo in product(*choices):
            if frozenset(combo) not in faces:
                missing.append((x, y, z, *combo))
    bigons = tuple(e.index for e in edges.orbits if e.degree == 2)
    ok = not loops and not shared and not missing
    return HakenReport(ok, tuple((list(p), list(ix)) for p, ix in shared), loops, tuple(missing), bigons)
