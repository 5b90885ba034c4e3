"""Newton polytopes: exact hulls, faces, weights, lattice enumeration.

The polytope of a Laurent polynomial is the convex hull of the origin and the
support.  Facets are stored as primitive integer inequalities <u, a> >= -c
with level c >= 0 (the origin always satisfies them).  The weight of a lattice
point a is the least c >= 0 with a in c*Delta; its denominators divide facet
levels, so every weight is an exact Fraction (or +infinity outside the
recession directions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import _kernels
from .errors import NotFullDimensionalError
from .laurent import LaurentPolynomial, Monomial

INFINITE_WEIGHT = math.inf


# ---------------------------------------------------------------------------
# Small exact integer linear algebra
# ---------------------------------------------------------------------------

def _rat_rank(rows: Sequence[Sequence[int]]) -> int:
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][c]
        for i in range(rank + 1, len(mat)):
            if mat[i][c] != 0:
                f = mat[i][c] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def _int_det(rows: Sequence[Sequence[int]]):
    """Exact determinant of a square integer matrix (Fraction elimination)."""
    n = len(rows)
    mat = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    assert det.denominator == 1
    return det.numerator


def _row_lattice_basis(vectors: Sequence[Monomial]) -> list[list[int]]:
    """Echelon basis of the integer lattice generated by the input rows."""
    rows = [list(v) for v in vectors if any(v)]
    n = len(vectors[0]) if vectors else 0
    basis: list[list[int]] = []
    col = 0
    while rows and col < n:
        live = [r for r in rows if r[col] != 0]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            a = live[0]
            rest = []
            for r in live[1:]:
                q = r[col] // a[col]
                r2 = [x - q * y for x, y in zip(r, a)]
                if r2[col] != 0:
                    rest.append(r2)
                elif any(r2):
                    rows.append(r2)
            live = [a] + rest
        pivot_row = live[0]
        if pivot_row[col] < 0:
            pivot_row = [-x for x in pivot_row]
        basis.append(pivot_row)
        rows = [r for r in rows if r[col] == 0 and any(r)]
        col += 1
    return basis


def _solve_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """Coordinates of v in the row span of an echelon basis, or None."""
    residue = [Fraction(x) for x in v]
    coords = []
    for b in basis:
        piv = next(i for i, x in enumerate(b) if x != 0)
        q = residue[piv] / b[piv]
        coords.append(q)
        residue = [r - q * x for r, x in zip(residue, b)]
    if any(residue):
        return None
    return tuple(coords)


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _primitive(u: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in u:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in u)


def _hyperplane_normal(points: Sequence[Monomial]) -> Optional[tuple[int, ...]]:
    """Primitive normal of the hyperplane through d points of Z^d (None when
    they do not affinely span one)."""
    d = len(points[0])
    if d == 1:
        return (1,)
    rows = [[Fraction(a - b) for a, b in zip(p, points[0])] for p in points[1:]]
    # Gauss, tracking pivot columns; nullspace must be 1-dimensional.
    pivots = []
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if r != d - 1:
        return None
    free = next(c for c in range(d) if c not in pivots)
    sol = [Fraction(0)] * d
    sol[free] = Fraction(1)
    for row, c in zip(rows[:r], pivots):
        sol[c] = -row[free]
    lcm = 1
    for x in sol:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return _primitive([int(x * lcm) for x in sol])


# ---------------------------------------------------------------------------
# Exact full-dimensional hulls
# ---------------------------------------------------------------------------

def _full_dim_hull(points: list[Monomial]):
    """(vertex index list, facet list) of conv(points) when the points
    affinely span R^d.  Facets are (primitive u, b) meaning <u, x> >= b.

    Brute force over d-subsets; adequate for desk-scale supports.
    """
    d = len(points[0])
    facets: dict[tuple[tuple[int, ...], int], None] = {}
    for comb in combinations(range(len(points)), d):
        u = _hyperplane_normal([points[i] for i in comb])
        if u is None:
            continue
        vals = [_dot(u, p) for p in points]
        v0 = _dot(u, points[comb[0]])
        if v0 == min(vals):
            facets[(u, v0)] = None
        if v0 == max(vals):
            facets[(tuple(-x for x in u), -v0)] = None
    facet_list = sorted(facets)
    vertex_idx = []
    for i, p in enumerate(points):
        active = [u for (u, b) in facet_list if _dot(u, p) == b]
        if active and _rat_rank(active) == d:
            vertex_idx.append(i)
    return vertex_idx, facet_list


def _face_vertex_sets(vertices: Sequence[Monomial], facet_list) -> list[frozenset[int]]:
    """All proper nonempty faces as vertex-index sets: intersection closure
    of the facet incidence sets."""
    facet_sets = [
        frozenset(i for i, v in enumerate(vertices) if _dot(u, v) == b)
        for (u, b) in facet_list
    ]
    closed = set(fs for fs in facet_sets if fs)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in closed:
                    closed.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(closed, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# Public types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Facet:
    """Inequality <normal, a> >= -level; the level is the pole order of f
    along the corresponding toric boundary divisor."""

    normal: tuple[int, ...]
    level: int


@dataclass(frozen=True)
class Face:
    polytope: "NewtonPolytope" = field(repr=False)
    vertex_indices: tuple[int, ...]
    dim: int
    contains_origin: bool
    active_facets: tuple[int, ...]

    @property
    def vertices(self) -> tuple[Monomial, ...]:
        return tuple(self.polytope.vertices[i] for i in self.vertex_indices)

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0

    def contains_point(self, alpha: Monomial) -> bool:
        return self.polytope._face_contains(self, tuple(alpha))

    def __str__(self):
        return "conv{" + ", ".join(str(v) for v in self.vertices) + "}"


class NewtonPolytope:
    """Convex hull of the origin and the support of a Laurent polynomial."""

    def __init__(self, nvars: int, points: Sequence[Monomial]):
        self.nvars = nvars
        pts = sorted(set(tuple(p) for p in points) | {(0,) * nvars})
        self._points = pts
        basis = _row_lattice_basis(pts)
        self.dim = len(basis)
        self._basis = basis
        if self.dim == 0:
            self.vertices: tuple[Monomial, ...] = ((0,) * nvars,)
            self.facets: tuple[Facet, ...] = ()
            self._hull_facets = []
            self._vertex_hull_coords = []
            return
        if self.dim == nvars:
            coords = pts
        else:
            coords = [tuple(int(c) for c in _solve_in_basis(basis, p)) for p in pts]
        vidx, hull_facets = _full_dim_hull(coords)
        self.vertices = tuple(pts[i] for i in vidx)
        self._vertex_hull_coords = [coords[i] for i in vidx]
        self._hull_facets = hull_facets
        if self.dim == nvars:
            self.facets = tuple(Facet(u, -b) for (u, b) in hull_facets)
        else:
            self.facets = ()

    def __eq__(self, other):
        if not isinstance(other, NewtonPolytope):
            return NotImplemented
        return self.nvars == other.nvars and self._points == other._points

    def __hash__(self):
        return hash((self.nvars, tuple(self._points)))

    # -- basic predicates ---------------------------------------------------

    def _require_full_dim(self):
        if self.dim != self.nvars:
            raise NotFullDimensionalError(self.dim, self.nvars)

    def contains_point(self, alpha: Monomial) -> bool:
        alpha = tuple(alpha)
        if self.dim == self.nvars:
            return all(_dot(f.normal, alpha) >= -f.level for f in self.facets)
        coords = _solve_in_basis(self._basis, alpha) if self.dim else None
        if self.dim == 0:
            return not any(alpha)
        if coords is None:
            return False
        return all(
            sum(Fraction(ui) * ci for ui, ci in zip(u, coords)) >= b
            for (u, b) in self._hull_facets
        )

    def _face_contains(self, face: Face, alpha: Monomial) -> bool:
        if not self.contains_point(alpha):
            return False
        if self.dim == self.nvars:
            return all(
                _dot(self.facets[j].normal, alpha) == -self.facets[j].level
                for j in face.active_facets
            )
        if self.dim == 0:
            return True
        coords = _solve_in_basis(self._basis, alpha)
        face_coord_set = [self._vertex_hull_coords[i] for i in face.vertex_indices]
        active = [
            (u, b) for (u, b) in self._hull_facets
            if all(_dot(u, v) == b for v in face_coord_set)
        ]
        return all(
            sum(Fraction(ui) * ci for ui, ci in zip(u, coords)) == b
            for (u, b) in active
        )

    def whole_face(self) -> Face:
        return Face(self, tuple(range(len(self.vertices))), self.dim, True, ())

    # -- faces ---------------------------------------------------------------

    def all_proper_faces(self) -> list[Face]:
        if self.dim == 0:
            return []
        out = []
        vertex_coords = self._vertex_hull_coords
        facet_sets = [
            frozenset(i for i, v in enumerate(vertex_coords) if _dot(u, v) == b)
            for (u, b) in self._hull_facets
        ]
        for vset in _face_vertex_sets(vertex_coords, self._hull_facets):
            vtuple = tuple(sorted(vset))
            pts = [vertex_coords[i] for i in vtuple]
            fdim = _rat_rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) if len(pts) > 1 else 0
            active = tuple(j for j, fs in enumerate(facet_sets) if vset <= fs)
            if self.dim == self.nvars:
                origin_on = all(self.facets[j].level == 0 for j in active)
            else:
                zero = (0,) * self.dim
                origin_on = all(
                    _dot(self._hull_facets[j][0], zero) == self._hull_facets[j][1]
                    for j in active
                )
            out.append(Face(self, vtuple, fdim, origin_on, active))
        return out

    def proper_faces_excluding_origin(self) -> list[Face]:
        return [f for f in self.all_proper_faces() if not f.contains_origin]

    # -- weights and lattice enumeration -------------------------------------

    def weight(self, alpha: Monomial):
        """min{c >= 0 : alpha in c*Delta} as a Fraction, or +inf."""
        self._require_full_dim()
        alpha = tuple(alpha)
        w = Fraction(0)
        for f in self.facets:
            s = -_dot(f.normal, alpha)
            if s > 0:
                if f.level == 0:
                    return INFINITE_WEIGHT
                w = max(w, Fraction(s, f.level))
        return w

    def lattice_points_in_dilate(self, c) -> list[Monomial]:
        """All alpha with weight <= c, ascending lex.

        Since <u, alpha> is an integer, alpha in c*Delta is equivalent to
        <u, alpha> >= -floor(c * level) facet by facet; the floor absorbs the
        rounding in the divisor twists exactly.
        """
        self._require_full_dim()
        c = Fraction(c)
        if c < 0:
            return []
        lo = [math.ceil(c * min(v[i] for v in self.vertices)) for i in range(self.nvars)]
        hi = [math.floor(c * max(v[i] for v in self.vertices)) for i in range(self.nvars)]
        normals = [f.normal for f in self.facets]
        bounds = [-math.floor(c * f.level) for f in self.facets]
        pts = _kernels.enumerate_box_filtered(lo, hi, normals, bounds)
        return [tuple(int(x) for x in row) for row in pts]

    def weight_census(self, c_max) -> dict[Fraction, int]:
        """Counts of lattice points by exact weight value, up to c_max."""
        self._require_full_dim()
        c_max = Fraction(c_max)
        census: dict[Fraction, int] = {}
        for alpha in self.lattice_points_in_dilate(c_max):
            w = self.weight(alpha)
            if w <= c_max:
                census[w] = census.get(w, 0) + 1
        return census

    def contains_origin_interior(self) -> bool:
        if self.dim != self.nvars:
            return False
        return all(f.level > 0 for f in self.facets)

    # -- volume ---------------------------------------------------------------

    def normalized_volume(self) -> int:
        """n! times the Euclidean volume, via an exact fan triangulation."""
        self._require_full_dim()
        total = 0
        for simplex in _triangulate(list(self.vertices)):
            rows = [[a - b for a, b in zip(p, simplex[0])] for p in simplex[1:]]
            total += abs(_int_det(rows))
        return total

    def summary(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(f.normal), "level": f.level} for f in self.facets],
            "dim": self.dim,
        }


def _triangulate(points: list[Monomial]) -> list[tuple[Monomial, ...]]:
    """Triangulation of conv(points) into simplices on the given points,
    recursing over facet pyramids from a fixed apex."""
    points = sorted(set(points))
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points]
    basis = _row_lattice_basis(diffs)
    d = len(basis)
    if d == 0:
        return []
    red = [tuple(int(c) for c in _solve_in_basis(basis, v)) for v in diffs]
    back = {r: p for r, p in zip(red, points)}
    vidx, facets = _full_dim_hull(red)
    verts = [red[i] for i in vidx]
    if len(verts) == d + 1:
        return [tuple(back[v] for v in sorted(verts))]
    apex = sorted(verts)[0]
    simplices = []
    for (u, b) in facets:
        if _dot(u, apex) == b:
            continue
        fpoints = [v for v in verts if _dot(u, v) == b]
        for sub in _triangulate(fpoints):
            # sub consists of this level's reduced points; lift both levels
            simplices.append((back[apex],) + tuple(back[v] for v in sub))
    return simplices


def newton_polytope(f: LaurentPolynomial) -> NewtonPolytope:
    """Hull of {0} and the support of f."""
    if f.is_zero:
        raise ValueError("f must be nonzero")
    return NewtonPolytope(f.nvars, f.support)
