"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import random

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from eventri._uf import UnionFind
from eventri.perm import Permutation
from eventri.triangulation import Triangulation, face_orbits


def _oriented_orbits(T: Triangulation, k: int):
    """Orbits of k-faces with a sign for each incidence relative to a representative ordering."""
    n = T.dim
    uf = UnionFind()
    faces = list(itertools.combinations(range(n + 1), k + 1))
    for s in range(T.num_simplices):
        for f in faces:
            uf.add((s, f))
    for s, i in T.facets():
        g = T.gluing(s, i)
        for f in faces:
            if i in f:
                continue
            img = [g.vertex_map(v) for v in f]
            order = sorted(img)
            parity = Permutation(tuple(order.index(v) for v in img)).sign()
            uf.union((s, f), (g.target_simplex, tuple(order)), 0 if parity == 1 else 1)
    return uf


def h1_invariants(T: Triangulation) -> list[int]:
    """H1 of the quotient complex as a list: 0 for each free summand, d for each Z/d (d > 1)."""
    e_uf = _oriented_orbits(T, 1)
    v_orbits = face_orbits(T, 0)
    t_orbits = face_orbits(T, 2)
    e_orbits = face_orbits(T, 1)
    E, V = len(e_orbits.orbits), len(v_orbits.orbits)

    def edge_term(s, u, w):
        idx = e_orbits.orbit_of(s, (u, w))
        sign = -1 if e_uf.parity((s, (u, w))) != e_uf.parity(e_orbits.orbits[idx].incidences[0]) else 1
        return idx, sign

    d1 = [[0] * E for _ in range(V)]
    for e in e_orbits.orbits:
        s, (u, w) = e.incidences[0]
        d1[v_orbits.orbit_of(s, (w,))][e.index] += 1
        d1[v_orbits.orbit_of(s, (u,))][e.index] -= 1
    d2 = [[0] * len(t_orbits.orbits) for _ in range(E)]
    for t in t_orbits.orbits:
        s, (a, b, c) = t.incidences[0]
        for (u, w), coef in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            idx, sign = edge_term(s, u, w)
            d2[idx][t.index] += coef * sign
    rank1 = Matrix(d1).rank() if V and E else 0
    kernel_dim = E - rank1
    if not t_orbits.orbits:
        return [0] * kernel_dim
    snf = smith_normal_form(Matrix(d2), domain=ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    torsion = sorted(d for d in diag if d > 1)
    free = kernel_dim - len(diag)
    return [0] * free + torsion


def random_orientable_table(rng: random.Random, max_simplices: int = 4, dim: int = 3):
    """Random connected orientable gluing table, or None if the draw is disconnected."""
    N = rng.randint(1, max_simplices)
    if N * (dim + 1) % 2:
        N = N + 1 if N < max_simplices else N - 1
    facets = [(s, i) for s in range(N) for i in range(dim + 1)]
    rng.shuffle(facets)
    signs = [rng.choice((1, -1)) for _ in range(N)]
    table = [[None] * (dim + 1) for _ in range(N)]
    for (s, i), (t, j) in zip(facets[::2], facets[1::2]):
        # choose a map sending i to j whose sign makes the gluing orientation-reversing
        want = -signs[t] * signs[s]
        while True:
            rest = [v for v in range(dim + 1) if v != j]
            rng.shuffle(rest)
            images = [0] * (dim + 1)
            images[i] = j
            src = [v for v in range(dim + 1) if v != i]
            for v, w in zip(src, rest):
                images[v] = w
            p = Permutation(tuple(images))
            if p.sign() == want:
                break
        table[s][i] = (t, p.to_list())
        table[t][j] = (s, p.inverse().to_list())
    try:
        return Triangulation.from_table(dim, table)
    except ValueError:
        return None


def random_corpus(count: int, seed: int = 2024, max_simplices: int = 4):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        T = random_orientable_table(rng, max_simplices)
        if T is not None:
            out.append(T)
    return out


def brute_force_orientable(T: Triangulation) -> bool:
    for signs in itertools.product((1, -1), repeat=T.num_simplices):
        if all(g.vertex_map.sign() * signs[s] == -signs[g.target_simplex] for s, row in enumerate(T.gluings) for g in row):
            return True
    return False


def brute_force_edge_degrees(T: Triangulation) -> list[int]:
    """Edge degrees by rotating through (tetrahedron, edge, facet) flags, no union-find."""
    assert T.dim == 3
    seen = set()
    degrees = []
    for s in range(T.num_simplices):
        for u, w in itertools.combinations(range(4), 2):
            if (s, (u, w)) in seen:
                continue
            a, b = [v for v in range(4) if v not in (u, w)]
            members = set()
            stack = [(s, u, w, a, b)]
            while stack:
                cur, x, y, p, q = stack.pop()
                key = (cur, tuple(sorted((x, y))))
                if key in members:
                    continue
                members.add(key)
                for exit_, other in ((p, q), (q, p)):
                    g = T.gluing(cur, exit_)
                    m = g.vertex_map
                    stack.append((g.target_simplex, m(x), m(y), m(other), m(exit_)))
            seen |= members
            orbit_sorted = sorted(members)
            if orbit_sorted[0] == (s, (u, w)):
                degrees.append(len(members))
    return degrees
