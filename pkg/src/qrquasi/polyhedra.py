"""Exact rational polytopes with cross-checked vertex and half-space descriptions.

Polytopes here live in an affine subspace of ``Q^n`` with ``n <= 3`` or so;
facets and vertices are found by enumerating subsets, which is exact and
entirely adequate at that size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg as la

Halfspace = tuple  # (normal, offset) meaning normal . x <= offset


def _canonical_halfspace(normal: Sequence, offset) -> Halfspace:
    """Scale so the normal is a primitive integer vector (keeps orientation)."""
    normal = la.vec(normal)
    offset = la.frac(offset)
    prim = la.primitive(normal)
    # positive factor c with prim = c * normal
    i = next(j for j, x in enumerate(normal) if x != 0)
    c = Fraction(prim[i]) / normal[i]
    return tuple(Fraction(x) for x in prim), offset * c


@dataclass(frozen=True)
class AffineSubspace:
    base_point: tuple
    direction_basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "base_point", la.vec(self.base_point))
        dirs = [la.vec(d) for d in self.direction_basis]
        keep = la.independent_subset(dirs)
        object.__setattr__(self, "direction_basis", tuple(dirs[i] for i in keep))

    @classmethod
    def hull(cls, points: Sequence[Sequence]) -> "AffineSubspace":
        pts = [la.vec(p) for p in points]
        if not pts:
            raise ValueError("affine hull of no points")
        return cls(pts[0], tuple(la.sub(p, pts[0]) for p in pts[1:]))

    @classmethod
    def whole(cls, rank: int) -> "AffineSubspace":
        return cls((0,) * rank, tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    @property
    def ambient_rank(self) -> int:
        return len(self.base_point)

    @property
    def dim(self) -> int:
        return len(self.direction_basis)

    def equations(self) -> list[Halfspace]:
        """Rows ``(n, c)`` with ``n . x = c`` cutting out the subspace."""
        normals = la.nullspace([list(d) for d in self.direction_basis], self.ambient_rank) \
            if self.direction_basis else la.nullspace([], self.ambient_rank)
        return [(n, la.dot(n, self.base_point)) for n in normals]

    def __contains__(self, x) -> bool:
        x = la.vec(x)
        return all(la.dot(n, x) == c for n, c in self.equations())

    def contains_subspace(self, other: "AffineSubspace") -> bool:
        if other.base_point not in self:
            return False
        return all(la.dot(n, d) == 0 for n, _ in self.equations() for d in other.direction_basis)

    def same_as(self, other: "AffineSubspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    def coordinates(self, x: Sequence) -> tuple:
        """Coordinates of ``x`` (assumed in the subspace) in the direction basis."""
        d = la.transpose([list(v) for v in self.direction_basis]) if self.direction_basis else []
        if not self.direction_basis:
            return ()
        sol = la.solve(d, la.sub(la.vec(x), self.base_point))
        if sol is None:
            raise ValueError(f"{x} is not in the affine subspace")
        return sol

    def point(self, y: Sequence) -> tuple:
        out = self.base_point
        for c, d in zip(y, self.direction_basis):
            out = la.add(out, la.scale(la.frac(c), d))
        return out

    def project(self, x: Sequence, gram: Sequence[Sequence]) -> tuple:
        """Orthogonal projection for the inner product ``gram``."""
        x = la.vec(x)
        if not self.direction_basis:
            return self.base_point
        d = [list(v) for v in self.direction_basis]
        gd = [la.matvec(gram, v) for v in d]
        normal = [[la.dot(a, b) for b in gd] for a in d]
        rhs = [la.dot(g, la.sub(x, self.base_point)) for g in gd]
        return self.point(la.solve(normal, rhs))

    def nearest_to_origin(self, gram) -> tuple:
        return self.project((0,) * self.ambient_rank, gram)

    def to_json(self) -> dict:
        return {"base_point": [_s(x) for x in self.base_point],
                "direction_basis": [[_s(x) for x in d] for d in self.direction_basis]}


def _s(x) -> str | int:
    x = la.frac(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class UnboundedPolytope(ValueError):
    pass


class EmptyPolytope(ValueError):
    pass


@dataclass(frozen=True)
class RationalPolytope:
    vertices: tuple
    halfspaces: tuple
    affine_hull: AffineSubspace

    # ---- construction -------------------------------------------------
    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "RationalPolytope":
        pts = sorted(set(la.vec(p) for p in points))
        if not pts:
            raise EmptyPolytope("no points")
        hull = AffineSubspace.hull(pts)
        ys = [hull.coordinates(p) for p in pts]
        facets_y = _facets(ys, hull.dim)
        halfspaces = tuple(sorted(set(_lift_halfspace(hull, n, c) for n, c in facets_y)))
        verts = tuple(sorted(p for p, y in zip(pts, ys) if _is_extreme(y, facets_y, hull.dim)))
        poly = cls(verts, halfspaces, hull)
        poly._cross_check()
        return poly

    @classmethod
    def from_halfspaces(cls, halfspaces: Sequence[Halfspace],
                        within: AffineSubspace, bound: int = 10**6) -> "RationalPolytope":
        """Intersection of ``within`` with the closed half-spaces.

        Raises EmptyPolytope or UnboundedPolytope.  Boundedness is decided by
        adding a box of half-width ``bound`` in subspace coordinates and checking
        that no vertex touches it.
        """
        d = within.dim
        hs_y = []
        for n, c in halfspaces:
            n = la.vec(n)
            ny = tuple(la.dot(n, v) for v in within.direction_basis)
            cy = la.frac(c) - la.dot(n, within.base_point)
            if not any(ny):
                if cy < 0:
                    raise EmptyPolytope("a half-space excludes the whole subspace")
                continue
            hs_y.append((ny, cy))
        box = []
        for i in range(d):
            e = tuple(Fraction(int(i == j)) for j in range(d))
            box.append((e, Fraction(bound)))
            box.append((tuple(-x for x in e), Fraction(bound)))
        verts_y = _vertices(hs_y + box, d)
        if not verts_y:
            raise EmptyPolytope("half-spaces have empty intersection")
        for y in verts_y:
            if any(abs(x) == bound for x in y):
                raise UnboundedPolytope("intersection is unbounded")
        return cls.from_points(within.point(y) for y in verts_y)

    def _cross_check(self) -> None:
        for v in self.vertices:
            if v not in self:
                raise AssertionError(f"vertex {v} violates the half-space description")
        if self.affine_hull.dim > 0:
            regenerated = RationalPolytope._vertices_of(self)
            if set(regenerated) != set(self.vertices):
                raise AssertionError("vertex and half-space descriptions disagree")

    @staticmethod
    def _vertices_of(poly: "RationalPolytope") -> list[tuple]:
        hull = poly.affine_hull
        hs_y = []
        for n, c in poly.halfspaces:
            ny = tuple(la.dot(n, v) for v in hull.direction_basis)
            hs_y.append((ny, c - la.dot(n, hull.base_point)))
        return sorted(hull.point(y) for y in _vertices(hs_y, hull.dim))

    # ---- queries --------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.affine_hull.dim

    @property
    def ambient_rank(self) -> int:
        return self.affine_hull.ambient_rank

    def __contains__(self, x) -> bool:
        x = la.vec(x)
        if x not in self.affine_hull:
            return False
        return all(la.dot(n, x) <= c for n, c in self.halfspaces)

    def in_relative_interior(self, x) -> bool:
        x = la.vec(x)
        if x not in self.affine_hull:
            return False
        return all(la.dot(n, x) < c for n, c in self.halfspaces)

    def contains_polytope(self, other: "RationalPolytope") -> bool:
        return all(v in self for v in other.vertices)

    def same_set(self, other: "RationalPolytope") -> bool:
        return set(self.vertices) == set(other.vertices)

    def centroid(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum((v[i] for v in self.vertices), Fraction(0)) / n
                     for i in range(self.ambient_rank))

    def intersect(self, halfspaces: Sequence[Halfspace]) -> "RationalPolytope":
        return RationalPolytope.from_halfspaces(list(self.halfspaces) + list(halfspaces),
                                                self.affine_hull)

    def scaled(self, k) -> "RationalPolytope":
        return RationalPolytope.from_points(la.scale(la.frac(k), v) for v in self.vertices)

    def integer_points(self) -> list[tuple]:
        from .characters import Box

        box = Box.around(self.vertices)
        return [p for p in box if p in self]

    def to_json(self) -> dict:
        return {
            "vertices": [[_s(x) for x in v] for v in self.vertices],
            "halfspaces": [{"normal": [_s(x) for x in n], "offset": _s(c)} for n, c in self.halfspaces],
            "affine_hull": self.affine_hull.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RationalPolytope":
        return cls.from_points([la.vec(v) for v in doc["vertices"]])


def _lift_halfspace(hull: AffineSubspace, ny: tuple, cy) -> Halfspace:
    """Express ``ny . y <= cy`` in ambient coordinates on the affine hull."""
    # take n in the span of the directions, so the result is canonical
    d = [list(v) for v in hull.direction_basis]
    g = [[la.dot(a, b) for b in d] for a in d]
    c = la.solve(g, ny)
    n = tuple(sum((ci * di[j] for ci, di in zip(c, d)), Fraction(0)) for j in range(hull.ambient_rank))
    off = la.frac(cy) + la.dot(n, hull.base_point)
    return _canonical_halfspace(n, off)


def _facets(ys: list[tuple], d: int) -> list[Halfspace]:
    """Facet inequalities ``n . y <= c`` of the full-dimensional hull of ``ys`` in Q^d."""
    if d == 0:
        return []
    if d == 1:
        lo = min(y[0] for y in ys)
        hi = max(y[0] for y in ys)
        return [((Fraction(1),), hi), ((Fraction(-1),), -lo)]
    out = set()
    for combo in itertools.combinations(ys, d):
        rows = [list(la.sub(p, combo[0])) for p in combo[1:]]
        ns = la.nullspace(rows, d)
        if len(ns) != 1:
            continue
        n = ns[0]
        c = la.dot(n, combo[0])
        vals = [la.dot(n, y) for y in ys]
        if all(x <= c for x in vals):
            out.add(_canonical_halfspace(n, c))
        elif all(x >= c for x in vals):
            out.add(_canonical_halfspace(tuple(-x for x in n), -c))
    return sorted(out)


def _is_extreme(y: tuple, facets: list[Halfspace], d: int) -> bool:
    if d == 0:
        return True
    tight = [list(n) for n, c in facets if la.dot(n, y) == c]
    return la.rank(tight) == d


def _vertices(halfspaces: list[Halfspace], d: int) -> list[tuple]:
    """Vertices of ``{y in Q^d : n . y <= c}`` by solving every d-subset."""
    if d == 0:
        return [()] if all(c >= 0 for _, c in halfspaces) else []
    found = set()
    for combo in itertools.combinations(halfspaces, d):
        m = [list(n) for n, _ in combo]
        if la.rank(m) < d:
            continue
        y = la.solve(m, [c for _, c in combo])
        if all(la.dot(n, y) <= c for n, c in halfspaces):
            found.add(y)
    return sorted(found)
