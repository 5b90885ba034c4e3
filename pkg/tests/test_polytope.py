import math
import random
from fractions import Fraction

import pytest

from exphodge.errors import NotFullDimensionalError
from exphodge.laurent import make_laurent, parse_laurent
from exphodge.polytope import INFINITE_WEIGHT, newton_polytope


def test_newton_segment():
    P = newton_polytope(parse_laurent("x + x^-1"))
    assert P.dim == 1
    assert set(P.vertices) == {(-1,), (1,)}
    ineqs = {(f.normal, f.level) for f in P.facets}
    assert ineqs == {((1,), 1), ((-1,), 1)}


def test_newton_triangle():
    P = newton_polytope(parse_laurent("x + y + x^-1*y^-1"))
    assert P.dim == 2
    assert set(P.vertices) == {(1, 0), (0, 1), (-1, -1)}
    # the edge conv{(1,0),(0,1)} is cut out by <(-1,-1), a> >= -1
    assert ((-1, -1), 1) in {(f.normal, f.level) for f in P.facets}


def test_newton_degenerate_segment():
    P = newton_polytope(parse_laurent("x*y"))
    assert P.dim == 1
    assert set(P.vertices) == {(0, 0), (1, 1)}


def test_normalized_volume_suite():
    assert newton_polytope(parse_laurent("x + x^-1")).normalized_volume() == 2
    assert newton_polytope(parse_laurent("x + y + x^-1*y^-1")).normalized_volume() == 3
    assert newton_polytope(parse_laurent("x + y")).normalized_volume() == 1


def test_normalized_volume_requires_full_dim():
    with pytest.raises(NotFullDimensionalError):
        newton_polytope(parse_laurent("x*y")).normalized_volume()


def _pick_area_doubled(P) -> int:
    """2 * area by Pick's theorem: independent volume oracle for n = 2."""
    pts = P.lattice_points_in_dilate(1)
    boundary = 0
    for alpha in pts:
        if any((-sum(u * a for u, a in zip(f.normal, alpha))) == f.level for f in P.facets):
            boundary += 1
    interior = len(pts) - boundary
    return 2 * interior + boundary - 2


def test_volume_matches_pick_oracle():
    rng = random.Random(11)
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(2, 6)):
            alpha = (rng.randint(-3, 3), rng.randint(-3, 3))
            terms[alpha] = Fraction(1)
        f = make_laurent(2, terms)
        P = newton_polytope(f)
        if P.dim != 2:
            continue
        assert P.normalized_volume() == _pick_area_doubled(P)


def test_proper_faces_examples():
    seg = newton_polytope(parse_laurent("x + x^-1"))
    faces = seg.proper_faces_excluding_origin()
    assert sorted(fc.vertices[0] for fc in faces) == [(-1,), (1,)]

    tri = newton_polytope(parse_laurent("x^2 + 2*x*y + y^2", ("x", "y")))
    faces = tri.proper_faces_excluding_origin()
    kinds = sorted((fc.dim, fc.vertices) for fc in faces)
    assert kinds == [(0, ((0, 2),)), (0, ((2, 0),)), (1, ((0, 2), (2, 0)))]

    half = newton_polytope(parse_laurent("x"))
    faces = half.proper_faces_excluding_origin()
    assert len(faces) == 1 and faces[0].vertices == ((1,),)


def test_weight_examples():
    P = newton_polytope(parse_laurent("x^2 + x^-1"))
    assert P.weight((1,)) == Fraction(1, 2)
    assert P.weight((-1,)) == 1
    assert P.weight((3,)) == Fraction(3, 2)
    assert newton_polytope(parse_laurent("x")).weight((-1,)) == INFINITE_WEIGHT
    assert newton_polytope(parse_laurent("x + y + x^-1*y^-1")).weight((1, 1)) == 2


def test_lattice_points_examples():
    assert newton_polytope(parse_laurent("x + x^-1")).lattice_points_in_dilate(1) == \
        [(-1,), (0,), (1,)]
    simplex = newton_polytope(parse_laurent("x + y"))
    assert len(simplex.lattice_points_in_dilate(2)) == 6
    tri = newton_polytope(parse_laurent("x + y + x^-1*y^-1"))
    assert len(tri.lattice_points_in_dilate(2)) == 10


def test_weight_census_examples():
    seg = newton_polytope(parse_laurent("x + x^-1"))
    assert seg.weight_census(2) == {Fraction(0): 1, Fraction(1): 2, Fraction(2): 2}
    mixed = newton_polytope(parse_laurent("x^2 + x^-1"))
    assert mixed.weight_census(1) == {Fraction(0): 1, Fraction(1, 2): 1, Fraction(1): 2}
    tri = newton_polytope(parse_laurent("x + y + x^-1*y^-1"))
    assert tri.weight_census(2) == {Fraction(0): 1, Fraction(1): 3, Fraction(2): 6}


def test_contains_origin_interior():
    assert newton_polytope(parse_laurent("x + x^-1")).contains_origin_interior()
    assert not newton_polytope(parse_laurent("x")).contains_origin_interior()
    assert newton_polytope(parse_laurent("x + y + x^-1*y^-1")).contains_origin_interior()
    assert not newton_polytope(parse_laurent("x*y")).contains_origin_interior()


def test_weight_of_origin_and_vertices(suite_poly):
    P = newton_polytope(suite_poly)
    assert P.weight((0,) * P.nvars) == 0
    for v in P.vertices:
        if any(v):
            assert P.weight(v) == 1


def test_gauge_homogeneity_and_membership():
    """w(k*a) = k*w(a) and (w(a) <= c) iff a is enumerated, randomized."""
    rng = random.Random(99)
    polys = [
        parse_laurent("x + x^-1"),
        parse_laurent("x^2 + x^-1"),
        parse_laurent("x + y + x^-1*y^-1"),
        parse_laurent("x + y"),
        parse_laurent("x + y + z + x^-1*y^-1*z^-1", ("x", "y", "z")),
    ]
    samples = 0
    for f in polys:
        P = newton_polytope(f)
        n = P.nvars
        cs = [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2)]
        members = {c: set(P.lattice_points_in_dilate(c)) for c in cs}
        for _ in range(2500):
            alpha = tuple(rng.randint(-5, 5) for _ in range(n))
            w = P.weight(alpha)
            k = rng.randint(0, 3)
            scaled = tuple(k * a for a in alpha)
            if w is not INFINITE_WEIGHT:
                assert P.weight(scaled) == k * w
            elif k > 0:
                assert P.weight(scaled) == INFINITE_WEIGHT
            for c in cs:
                assert (w <= c) == (alpha in members[c])
            samples += 1
    assert samples >= 10_000


def test_floor_equivalence():
    """<u, a> >= -floor(c*level) agrees with the weight condition."""
    P = newton_polytope(parse_laurent("x^2 + x^-1"))
    for c in (Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(7, 4)):
        for a in range(-8, 8):
            by_floor = all(
                sum(u * x for u, x in zip(f.normal, (a,))) >= -math.floor(c * f.level)
                for f in P.facets)
            assert by_floor == (P.weight((a,)) <= c)


def test_volume_additive_over_triangulation():
    from exphodge.polytope import _int_det, _triangulate

    P = newton_polytope(parse_laurent("x + y + x^-1*y^-1"))
    simplices = _triangulate(list(P.vertices))
    parts = []
    for s in simplices:
        rows = [[a - b for a, b in zip(p, s[0])] for p in s[1:]]
        parts.append(abs(_int_det(rows)))
    assert sum(parts) == P.normalized_volume()
    assert all(p > 0 for p in parts)


def test_unit_simplex_volume():
    for n, text in ((1, "x"), (2, "x + y"), (3, "x + y + z")):
        f = parse_laurent(text)
        assert newton_polytope(f).normalized_volume() == 1
