"""Finite covers of a triangulation built from permutation actions on loop generators."""

from __future__ import annotations

import json
from dataclasses import dataclass

from eventri.errors import InvalidInput, RelatorViolation
from eventri.perm import Permutation
from eventri.symrep import RepReport, canonical_representation, induced_representation, walk_around
from eventri.triangulation import (
    DualGraph,
    Gluing,
    Triangulation,
    dual_components,
    dual_graph,
    face_orbits,
    is_even,
    vertex_count,
)


@dataclass(frozen=True)
class PermutationAction:
    """Sheet permutations, one per non-tree dual edge in the order of ``dual_graph(T, base)``."""

    degree: int
    images: tuple[Permutation, ...]
    source: str
    base: int = 0

    def to_json(self) -> dict:
        return {"degree": self.degree, "images": [p.to_list() for p in self.images], "source": self.source}


def canonical_action(rep: RepReport) -> PermutationAction:
    return PermutationAction(rep.degree, tuple(rep.perms()), "induced" if rep.k else "canonical", rep.base)


def induced_action(rep: RepReport, k: int) -> PermutationAction:
    ind = induced_representation(rep, k)
    return PermutationAction(ind.degree, tuple(ind.perms()), f"induced:{k}", rep.base)


def regular_action(rep: RepReport) -> PermutationAction:
    """Left multiplication of the image on its own (sorted) element list."""
    elements = list(rep.image.elements)
    index = {g: i for i, g in enumerate(elements)}
    images = tuple(Permutation(tuple(index[g.perm * h] for h in elements)) for g in rep.generators)
    tag = f"regular-of-induced:{rep.k}" if rep.k else "regular-of-image"
    return PermutationAction(len(elements), images, tag, rep.base)


def trivial_action(T: Triangulation, base: int = 0) -> PermutationAction:
    count = len(dual_graph(T, base).non_tree_edges())
    return PermutationAction(1, (Permutation.identity(1),) * count, "trivial", base)


def action_from_json(T: Triangulation, text: str | bytes, base: int = 0) -> PermutationAction:
    try:
        data = json.loads(text)
        degree = int(data["degree"])
        images = tuple(Permutation(tuple(p)) for p in data["images"])
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidInput(f"bad action file: {exc}") from None
    expected = len(dual_graph(T, base).non_tree_edges())
    if len(images) != expected or any(len(p) != degree for p in images):
        raise InvalidInput(f"action must list {expected} permutations of degree {degree}")
    return PermutationAction(degree, images, "explicit", base)


def _crossing(graph: DualGraph, action: PermutationAction, gen_of: dict, s: int, i: int) -> Permutation:
    e = graph.edge_of[(s, i)]
    if e not in gen_of:
        return Permutation.identity(action.degree)
    g = action.images[gen_of[e]]
    return g if graph.oriented(graph.edges[e])[0] == (s, i) else g.inverse()


def check_relators(T: Triangulation, action: PermutationAction, graph: DualGraph | None = None) -> None:
    """Raise unless the sheet permutation around every (n-2)-orbit is trivial."""
    graph = graph or dual_graph(T, action.base)
    gen_of = {e.index: idx for idx, e in enumerate(graph.non_tree_edges())}
    n = T.dim
    for orbit in face_orbits(T, n - 2).orbits:
        s, face = orbit.incidences[0]
        a, b = sorted(set(range(n + 1)) - set(face))
        _, steps = walk_around(T, s, a, b)
        total = Permutation.identity(action.degree)
        state = (s, a, b)
        for _ in range(steps):
            cur, x, y = state
            total = _crossing(graph, action, gen_of, cur, x) * total
            p = T.gluing(cur, x).vertex_map
            state = (T.gluing(cur, x).target_simplex, p(y), p(x))
        if not total.is_identity():
            raise RelatorViolation(orbit.index, total)


@dataclass(frozen=True)
class CoverTriangulation:
    base: Triangulation
    sheets: int
    result: Triangulation
    projection: tuple[tuple[int, int], ...]
    action: PermutationAction

    def projection_json(self) -> dict:
        return {"sheets": self.sheets, "projection": [list(p) for p in self.projection]}


def build_cover(T: Triangulation, action: PermutationAction) -> CoverTriangulation:
    """Simplex ``(s, a)`` becomes ``s * degree + a``; crossing a facet moves sheets by the action."""
    graph = dual_graph(T, action.base)
    if len(action.images) != len(graph.non_tree_edges()):
        raise InvalidInput("action does not match the generator count of this triangulation")
    check_relators(T, action, graph)
    gen_of = {e.index: idx for idx, e in enumerate(graph.non_tree_edges())}
    d = action.degree
    rows = []
    projection = []
    for s in range(T.num_simplices):
        for a in range(d):
            projection.append((s, a))
            row = []
            for i in range(T.dim + 1):
                g = T.gluing(s, i)
                sheet = _crossing(graph, action, gen_of, s, i)(a)
                row.append(Gluing(g.target_simplex * d + sheet, g.vertex_map))
            rows.append(tuple(row))
    cover = Triangulation(T.dim, tuple(rows), allow_disconnected=True)
    return CoverTriangulation(T, d, cover, tuple(projection), action)


def verify_cover(C: CoverTriangulation, k: int = 2) -> dict:
    """Recompute what the covering arguments rely on, directly on the cover."""
    from eventri.normal import assemble_hypersurface, canonical_solution, component_embedded, surface_analysis

    R, T, d = C.result, C.base, C.sheets
    projection_ok = True
    for c in range(R.num_simplices):
        s, _ = C.projection[c]
        for i in range(R.dim + 1):
            g, h = R.gluing(c, i), T.gluing(s, i)
            if C.projection[g.target_simplex][0] != h.target_simplex or g.vertex_map != h.vertex_map:
                projection_ok = False
    even = is_even(R)[0]
    comps = dual_components(R)
    report = {
        "sheets": d,
        "simplices": R.num_simplices,
        "projection_ok": projection_ok,
        "even": even,
        "base_even": is_even(T)[0],
        "vertices": vertex_count(R),
        "base_vertices": vertex_count(T),
        "components": len(comps),
        "induced_trivial": None,
        "surface": None,
    }
    connected = len(comps) == 1
    if connected and even and R.dim >= 3 and 2 <= k <= (R.dim + 1) // 2:
        rep = canonical_representation(Triangulation(R.dim, R.gluings))
        report["induced_trivial"] = induced_representation(rep, k).image.is_trivial
    if 2 <= k <= (R.dim + 1) // 2:
        H = assemble_hypersurface(R, canonical_solution(R, k))
        surf = {
            "k": k,
            "components": len(H.components),
            "embedded": sum(component_embedded(H, comp) for comp in H.components),
        }
        if R.dim == 3:
            surf["chi_total"] = sum(sd.chi for sd in surface_analysis(R, H))
        report["surface"] = surf
    return report
