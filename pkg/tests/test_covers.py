import json

import pytest

from eventri.covers import (
    PermutationAction,
    action_from_json,
    build_cover,
    canonical_action,
    check_relators,
    induced_action,
    regular_action,
    trivial_action,
    verify_cover,
)
from eventri.errors import InvalidInput, RelatorViolation
from eventri.normal import assemble_hypersurface, canonical_solution, surface_analysis
from eventri.perm import Permutation
from eventri.symrep import canonical_representation, induced_representation
from eventri.triangulation import FIXTURES, Triangulation, is_even, make_double_simplex, vertex_count, vertex_link_euler


def connected(C):
    return Triangulation(C.result.dim, C.result.gluings)


def test_regular_action_degrees(fx):
    rep = canonical_representation(fx("quaternion"))
    a = regular_action(rep)
    assert a.degree == 4 and a.source == "regular-of-image"
    ind = induced_representation(canonical_representation(fx("fig8")), 2)
    assert regular_action(ind).degree == 3
    d = regular_action(canonical_representation(make_double_simplex(3)))
    assert d.degree == 1 and all(p.is_identity() for p in d.images)
    for T, act in ((fx("quaternion"), a), (fx("fig8"), regular_action(ind))):
        check_relators(T, act)


def test_fig8_triple_cover(fx):
    T = fx("fig8")
    C = build_cover(T, induced_action(canonical_representation(T), 2))
    R = connected(C)
    assert R.num_simplices == 6 and is_even(R)[0]
    assert set(vertex_link_euler(R)) == {0}
    report = verify_cover(C)
    assert report["components"] == 1 and report["surface"]["components"] == 3


def test_degree_one_cover_is_the_base(fx):
    for name in ("fig8", "quaternion", "l31"):
        T = fx(name)
        C = build_cover(T, trivial_action(T))
        assert C.result.gluings == T.gluings
        rep = verify_cover(C)
        assert rep["vertices"] == vertex_count(T) and rep["even"] == is_even(T)[0]
        H = assemble_hypersurface(T, canonical_solution(T, 2))
        assert rep["surface"]["components"] == len(H.components)


def test_quaternion_regular_cover(fx):
    T = fx("quaternion")
    C = build_cover(T, regular_action(canonical_representation(T)))
    assert C.result.num_simplices == 8
    report = verify_cover(C)
    assert report["even"] and report["projection_ok"] and report["vertices"] == vertex_count(connected(C))
    assert len(build_cover(T, canonical_action(canonical_representation(T))).result.gluings) == 8


def test_relator_violation(fx):
    T = fx("l41")
    bad = PermutationAction(2, (Permutation((1, 0)), Permutation((0, 1))), "explicit")
    with pytest.raises(RelatorViolation):
        build_cover(T, bad)


def test_projection_is_local_isomorphism(fx):
    T = fx("binary_tetrahedral")
    C = build_cover(T, regular_action(canonical_representation(T)))
    for c in range(C.result.num_simplices):
        s, _ = C.projection[c]
        for i in range(4):
            g, h = C.result.gluing(c, i), T.gluing(s, i)
            assert C.projection[g.target_simplex][0] == h.target_simplex and g.vertex_map == h.vertex_map


def even_cases(fx, corpus):
    out = [fx(n) for n in FIXTURES if is_even(fx(n))[0] and fx(n).num_simplices <= 8]
    return out + [T for T in corpus if is_even(T)[0]][:20]


def test_regular_cover_of_induced_image_trivializes_it(fx, corpus):
    for T in even_cases(fx, corpus):
        ind = induced_representation(canonical_representation(T), 2)
        C = build_cover(T, regular_action(ind))
        R = connected(C)
        assert is_even(R)[0]
        assert induced_representation(canonical_representation(R), 2).image.is_trivial
        H = assemble_hypersurface(R, canonical_solution(R, 2))
        assert len(H.components) == 3


def test_lifted_euler_characteristic_multiplies(fx, corpus):
    for T in even_cases(fx, corpus):
        rep = canonical_representation(T)
        for act in (regular_action(induced_representation(rep, 2)), canonical_action(rep)):
            C = build_cover(T, act)
            base = sum(s.chi for s in surface_analysis(T, assemble_hypersurface(T, canonical_solution(T, 2))))
            R = C.result
            lifted = sum(s.chi for s in surface_analysis(R, assemble_hypersurface(R, canonical_solution(R, 2))))
            assert lifted == act.degree * base
            assert is_even(R)[0]


def test_action_file_validation(fx):
    T = fx("fig8")
    ok = action_from_json(T, json.dumps({"degree": 1, "images": [[0], [0], [0]]}))
    assert ok.source == "explicit"
    with pytest.raises(InvalidInput):
        action_from_json(T, json.dumps({"degree": 2, "images": [[1, 0]]}))
    with pytest.raises(InvalidInput):
        action_from_json(T, "not json")
