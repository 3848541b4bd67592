import itertools
import random

import pytest

from eventri.covers import build_cover, regular_action
from eventri.errors import Dim2Unsupported, NonTrivialImage, NotEven
from eventri.perm import Permutation
from eventri.symrep import (
    FacetPath,
    canonical_representation,
    haken_cell_check,
    induced_representation,
    klein_factor_check,
    perspectivity,
    projectivity,
    vertex_labelling,
    vertex_orbit_witness,
    walk_around,
)
from eventri.triangulation import (
    FIXTURES,
    Triangulation,
    face_orbits,
    is_even,
    make_cross_polytope_boundary,
    make_double_simplex,
    vertex_count,
)


def cyc(text, m=4):
    return Permutation.from_cycles(text, m)


def even_fixtures(fx):
    return [fx(n) for n in FIXTURES if is_even(fx(n))[0]]


def test_quaternion_perspectivity_reads_back_as_stated(fx):
    p = perspectivity(fx("quaternion"), 0, 3)
    # the inverse sends 3 -> 0, 0 -> 1, 1 -> 2, 2 -> 3
    assert [p.inverse()(v) for v in (3, 0, 1, 2)] == [0, 1, 2, 3]


def test_double_simplex_perspectivities_are_identity():
    T = make_double_simplex(3)
    assert all(perspectivity(T, s, i).is_identity() for s, i in T.facets())


def test_perspectivity_then_reverse_is_identity(fx):
    for name in FIXTURES:
        T = fx(name)
        for s, i in T.facets():
            t, j = T.partner(s, i)
            assert (perspectivity(T, t, j) * perspectivity(T, s, i)).is_identity()


def test_perspectivity_bad_index(fx):
    with pytest.raises(IndexError):
        perspectivity(fx("l41"), 1, 0)


def test_projectivity_of_known_loops(fx):
    Q = fx("quaternion")
    # leave through the F2 facet, come back through the F3 pairing
    assert projectivity(Q, FacetPath.through(Q, 0, [2, 2])) == cyc("(02)(13)")
    F = fx("fig8")
    assert projectivity(F, FacetPath.through(F, 0, [2, 0])) == cyc("(032)")


def test_empty_path_and_malformed_path(fx):
    T = fx("fig8")
    assert projectivity(T, FacetPath(())).is_identity()
    with pytest.raises(ValueError):
        projectivity(T, FacetPath(((0, 0), (1, 0))))
    with pytest.raises(ValueError):
        projectivity(T, FacetPath(((0, 2), (1, 3), (1, 3), (0, 2))))


def test_canonical_generators(fx):
    def multiset(name):
        return sorted(str(g.perm) for g in canonical_representation(fx(name)).generators)

    assert multiset("quaternion") == sorted(["(02)(13)", "(03)(12)", "(01)(23)"])
    assert multiset("fig8") == sorted(["(032)", "(03)(12)", "(013)"])
    assert multiset("l41") == ["(0321)", "(0321)"]


@pytest.mark.parametrize("name, label, order", [("quaternion", "K(normal)", 4), ("fig8", "A4", 12), ("l41", "C4", 4)])
def test_canonical_images(fx, name, label, order):
    img = canonical_representation(fx(name)).image
    assert (img.label, img.order) == (label, order)
    els = set(img.elements)
    assert all(a * b in els and a.inverse() in els for a in els for b in els)


def test_canonical_refusals(fx):
    with pytest.raises(NotEven) as err:
        canonical_representation(fx("s3_odd"))
    assert err.value.witness.degree % 2
    with pytest.raises(Dim2Unsupported):
        canonical_representation(make_double_simplex(2))


def test_rep_json_shape(fx):
    data = canonical_representation(fx("l41")).to_json()
    assert data["base"] == 0 and data["even"] is True
    assert data["generators"][0]["perm"] == [3, 0, 1, 2]
    assert data["image"]["order"] == 4 and len(data["image"]["elements"]) == 4


def test_induced_images(fx):
    ind = induced_representation(canonical_representation(fx("l41")), 2)
    assert len(ind.classes) == 3 and ind.image.label == "C2"
    moved = {x for g in ind.image.elements for x in range(3) if g(x) != x}
    assert len(moved) == 2
    assert induced_representation(canonical_representation(fx("fig8")), 2).image.label == "C3"
    assert induced_representation(canonical_representation(fx("quaternion")), 2).image.is_trivial


def test_induced_k_range(fx):
    rep = canonical_representation(fx("fig8"))
    for k in (1, 3):
        with pytest.raises(ValueError):
            induced_representation(rep, k)


@pytest.mark.parametrize("n, k, N", [(4, 2, 10), (5, 2, 15), (5, 3, 10)])
def test_induced_class_counts(n, k, N):
    ind = induced_representation(canonical_representation(make_double_simplex(n)), k)
    assert len(ind.classes) == N and ind.image.is_trivial


def test_klein_factorization_on_fixtures(fx):
    for name in ("quaternion", "fig8", "l41"):
        assert klein_factor_check(canonical_representation(fx(name)))


def test_walk_arounds_identity_on_even_fixtures(fx):
    for T in even_fixtures(fx):
        for check in canonical_representation(T).relator_checks:
            assert check.perm.is_identity()


def test_odd_walk_around_is_not_identity(fx):
    T = fx("s3_odd")
    for orbit in face_orbits(T, 1).orbits:
        s, face = orbit.incidences[0]
        a, b = sorted(set(range(4)) - set(face))
        W, _ = walk_around(T, s, a, b)
        assert W.is_identity() == (orbit.degree % 2 == 0)


def evaluate(rep, word):
    out = Permutation.identity(rep.degree)
    for idx, e in word:
        g = rep.generators[idx].perm
        out = (g if e == 1 else g.inverse()) * out
    return out


def test_vertex_witness_quaternion(fx):
    T = fx("quaternion")
    rep = canonical_representation(T)
    wit = vertex_orbit_witness(T, rep)
    assert [w.corners for w in wit] == list(itertools.combinations(range(4), 2))
    for w in wit:
        assert evaluate(rep, w.word)(w.corners[0]) == w.corners[1]
    assert not rep.image.is_trivial


def test_vertex_witness_double_and_l31(fx):
    D = make_double_simplex(3)
    assert vertex_orbit_witness(D, canonical_representation(D)) == []
    T = fx("l31")
    rep = canonical_representation(T)
    verts = face_orbits(T, 0)
    wit = vertex_orbit_witness(T, rep)
    assert wit
    for w in wit:
        v, u = w.corners
        assert verts.orbit_of(0, (v,)) == verts.orbit_of(0, (u,))
        assert evaluate(rep, w.word)(v) == u
    pairs = {w.corners for w in wit}
    expected = {(v, u) for v, u in itertools.combinations(range(4), 2) if verts.orbit_of(0, (v,)) == verts.orbit_of(0, (u,))}
    assert pairs == expected


@pytest.mark.parametrize("n", [3, 4])
def test_vertex_labelling_double(n):
    T = make_double_simplex(n)
    lab = vertex_labelling(T)
    assert sorted(lab.vertex_labels) == list(range(n + 1)) and lab.proper(T)


def test_vertex_labelling_refuses_quaternion(fx):
    with pytest.raises(NonTrivialImage):
        vertex_labelling(fx("quaternion"))


def test_labelling_colours_edges_properly(fx):
    T = fx("cross3")
    lab = vertex_labelling(T)
    verts = face_orbits(T, 0)
    for e in face_orbits(T, 1).orbits:
        s, (a, b) = e.incidences[0]
        assert lab.vertex_labels[verts.orbit_of(s, (a,))] != lab.vertex_labels[verts.orbit_of(s, (b,))]


def _endpoint_pairs(T):
    verts = face_orbits(T, 0)
    out = []
    for e in face_orbits(T, 1).orbits:
        s, (a, b) = e.incidences[0]
        out.append(frozenset((verts.orbit_of(s, (a,)), verts.orbit_of(s, (b,)))))
    return out


def test_haken_cross_polytope_true(fx):
    report = haken_cell_check(fx("cross3"))
    assert report.ok
    assert len(set(_endpoint_pairs(fx("cross3")))) == 24


def test_haken_double3_has_simple_one_skeleton():
    # Four vertices, six edges on six distinct vertex pairs, all four triangles present.
    T = make_double_simplex(3)
    pairs = _endpoint_pairs(T)
    assert len(pairs) == len(set(pairs)) == 6
    report = haken_cell_check(T)
    assert report.ok
    assert len(report.bigons) == 6


def test_haken_false_on_lens_cover(fx):
    T = fx("l41")
    C = build_cover(T, regular_action(canonical_representation(T))).result
    C = Triangulation(3, C.gluings)
    pairs = _endpoint_pairs(C)
    assert len(pairs) > len(set(pairs))
    report = haken_cell_check(C)
    assert not report.ok and report.shared_pairs


def test_haken_precondition_on_one_vertex_fixtures(fx):
    for name in ("quaternion", "l41", "fig8"):
        with pytest.raises(NonTrivialImage):
            haken_cell_check(fx(name))
    with pytest.raises(NotEven):
        haken_cell_check(fx("s3_odd"))


def _conjugate(G, H, m=4):
    G, H = set(G), set(H)
    return any({c * g * c.inverse() for g in G} == H for c in map(Permutation, itertools.permutations(range(m))))


def test_base_change_gives_conjugate_images(fx, corpus):
    cases = even_fixtures(fx) + [T for T in corpus if is_even(T)[0]][:25]
    for T in cases:
        if T.num_simplices > 8:
            continue
        G0 = canonical_representation(T, 0).image.elements
        for b in range(1, T.num_simplices):
            assert _conjugate(G0, canonical_representation(T, b).image.elements)


def test_few_vertices_force_nontrivial_image(fx, corpus):
    cases = even_fixtures(fx) + [T for T in corpus if is_even(T)[0]]
    checked = 0
    for T in cases:
        if vertex_count(T) < T.dim + 1:
            assert canonical_representation(T).image.order > 1
            checked += 1
    assert checked >= 10


def test_induced_representation_is_a_homomorphism(fx):
    rng = random.Random(11)
    for name in ("fig8", "l41", "quaternion", "binary_tetrahedral"):
        rep = canonical_representation(fx(name))
        ind = induced_representation(rep, 2)
        for _ in range(20):
            word = [(rng.randrange(len(rep.generators)), rng.choice((1, -1))) for _ in range(rng.randint(0, 6))]
            lifted = evaluate(rep, word)
            from eventri.combinat import induced_permutation

            assert induced_permutation(lifted, list(ind.classes)) == evaluate(ind, word)


def test_image_element_list_omitted_for_large_groups():
    from eventri.symrep import make_image

    gens = [cyc("(01)", 6), cyc("(012345)", 6)]
    img = make_image(gens, 6)
    assert img.order == 720 and "elements" not in img.to_json()
