"""Rational convex polytopes in dimensions 2 to 4.

The hull is found by brute force: every d-subset of input points spans a
candidate hyperplane, and the candidate is a facet when all points lie on one
side.  All of this is done over the integers after clearing denominators, so
the face lattice is exact.
"""

from __future__ import annotations

import enum
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import rational as Q
from .errors import DegenerateInput, DimensionUnsupported, InputError, ZeroDirection

MIN_DIM = 2
MAX_DIM = 4


@dataclass(frozen=True)
class Face:
    """A face of a polytope, identified by the sorted indices of its vertices."""

    dim: int
    vertex_indices: tuple[int, ...]
    point: tuple
    span: tuple  # `dim` linearly independent direction vectors

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={list(self.vertex_indices)})"


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]  # primitive, outward
    offset: Fraction  # normal . x <= offset on the polytope
    face: Face


class PointClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Location:
    kind: PointClass
    face: Face | None = None  # minimal face containing the point, when on the boundary


class RationalPolytope:
    """Full-dimensional convex polytope with exact vertices and face lattice.

    Instances are treated as immutable; use :func:`build_polytope` to create
    one.  Hashing and equality are by identity so instances can key caches.
    """

    def __init__(self, vertices: tuple, facets: tuple[Facet, ...], faces: dict, children: dict):
        self.vertices = vertices
        self.dim = len(vertices[0])
        self.facets = facets
        self._faces = faces  # vertex-index tuple -> Face, including the top face
        self._children = children  # vertex-index tuple -> tuple of facets of that face
        self._containing: dict[tuple, tuple[Facet, ...]] = {}
        self.top = faces[tuple(range(len(vertices)))]

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    @property
    def faces(self) -> list[Face]:
        """All proper faces, sorted by dimension then vertex indices."""
        return sorted(
            (f for f in self._faces.values() if f.dim < self.dim),
            key=lambda f: (f.dim, f.vertex_indices),
        )

    def faces_of_dim(self, j: int) -> list[Face]:
        return [f for f in self.faces if f.dim == j]

    def face_by_vertices(self, indices: Iterable[int]) -> Face:
        return self._faces[tuple(sorted(indices))]

    def subfaces(self, face: Face) -> tuple[Face, ...]:
        """Facets of ``face`` (its faces of one dimension less)."""
        return self._children.get(face.vertex_indices, ())

    def face_vertices(self, face: Face) -> list[tuple]:
        return [self.vertices[i] for i in face.vertex_indices]

    def facets_containing(self, face: Face) -> tuple[Facet, ...]:
        key = face.vertex_indices
        if key not in self._containing:
            s = set(key)
            self._containing[key] = tuple(
                f for f in self.facets if s.issubset(f.face.vertex_indices)
            )
        return self._containing[key]

    def facet_slacks(self, x: Sequence) -> list[Fraction]:
        """``normal . x - offset`` for every facet (<= 0 means inside)."""
        return [Q.dot(f.normal, x) - f.offset for f in self.facets]

    def contains(self, x: Sequence) -> bool:
        return all(s <= 0 for s in self.facet_slacks(x))

    def in_face(self, x: Sequence, face: Face) -> bool:
        """Closed membership of ``x`` in ``face``."""
        on = set(id(f) for f in self.facets_containing(face))
        for f, s in zip(self.facets, self.facet_slacks(x)):
            if s > 0 or (id(f) in on and s != 0):
                return False
        return True

    def in_relative_interior(self, x: Sequence, face: Face) -> bool:
        on = set(id(f) for f in self.facets_containing(face))
        for f, s in zip(self.facets, self.facet_slacks(x)):
            if id(f) in on:
                if s != 0:
                    return False
            elif s >= 0:
                return False
        return True

    def translated(self, t: Sequence) -> "RationalPolytope":
        return build_polytope([Q.add(v, t) for v in self.vertices])

    def reflected(self) -> "RationalPolytope":
        return build_polytope([Q.neg(v) for v in self.vertices])

    def bounding_box(self) -> tuple[tuple, tuple]:
        cols = list(zip(*self.vertices))
        return tuple(min(c) for c in cols), tuple(max(c) for c in cols)


def _affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return Q.rank([Q.sub(p, p0) for p in points[1:]])


def _make_face(vertices, indices: tuple[int, ...]) -> Face:
    pts = [vertices[i] for i in indices]
    p0 = pts[0]
    diffs = [Q.sub(p, p0) for p in pts[1:]]
    span = tuple(diffs[i] for i in Q.independent_rows(diffs))
    return Face(dim=len(span), vertex_indices=indices, point=p0, span=span)


def build_polytope(vertices: Sequence[Sequence]) -> RationalPolytope:
    """Convex hull of rational points, with facets and the full face lattice.

    Raises DimensionUnsupported outside 2 <= d <= 4 and DegenerateInput when the
    points do not affinely span R^d.  Points that are not extreme are dropped
    with a warning.
    """
    if not vertices:
        raise DegenerateInput("no points given")
    pts: list[tuple] = []
    seen = set()
    for i, v in enumerate(vertices):
        fv = Q.to_vector(v, f"vertices[{i}]")
        if fv not in seen:
            seen.add(fv)
            pts.append(fv)
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise InputError("vertices have inconsistent lengths")
    if not MIN_DIM <= d <= MAX_DIM:
        raise DimensionUnsupported(f"dimension {d} outside supported range {MIN_DIM}..{MAX_DIM}")
    if len(pts) < d + 1 or _affine_dim(pts) != d:
        raise DegenerateInput(f"points do not affinely span R^{d}")

    scale = Q.denominator_lcm(pts)
    ipts = [tuple(int(x * scale) for x in p) for p in pts]

    hyperplanes: dict[tuple, tuple] = {}
    tried = set()
    for combo in itertools.combinations(range(len(ipts)), d):
        p0 = ipts[combo[0]]
        n = Q.normal_of([Q.sub(ipts[i], p0) for i in combo[1:]])
        if not any(n):
            continue
        a = Q.primitive(n)
        b = sum(x * y for x, y in zip(a, p0))
        if next(x for x in a if x != 0) < 0:
            a, b = tuple(-x for x in a), -b
        if (a, b) in tried:
            continue
        tried.add((a, b))
        slack = [sum(x * y for x, y in zip(a, p)) - b for p in ipts]
        if max(slack) <= 0:
            hyperplanes[(a, b)] = frozenset(i for i, s in enumerate(slack) if s == 0)
        elif min(slack) >= 0:
            hyperplanes[(tuple(-x for x in a), -b)] = frozenset(
                i for i, s in enumerate(slack) if s == 0
            )

    extreme = []
    for i in range(len(pts)):
        normals = [a for (a, _), on in hyperplanes.items() if i in on]
        if Q.rank(normals) == d:
            extreme.append(i)
    if len(extreme) < len(pts):
        dropped = [Q.fraction_str(x) for i in range(len(pts)) if i not in extreme for x in pts[i]]
        warnings.warn(
            f"discarded {len(pts) - len(extreme)} non-extreme input point(s): {dropped}",
            stacklevel=2,
        )
    remap = {old: new for new, old in enumerate(extreme)}
    verts = tuple(pts[i] for i in extreme)

    faces: dict[tuple, Face] = {}
    dims: dict[tuple, int] = {}

    def face(indices: tuple[int, ...]) -> Face:
        if indices not in faces:
            faces[indices] = _make_face(verts, indices)
        return faces[indices]

    facets = []
    for (a, b), on in sorted(hyperplanes.items(), key=lambda kv: kv[0][0], reverse=True):
        idx = tuple(sorted(remap[i] for i in on if i in remap))
        facets.append(Facet(normal=a, offset=Fraction(b, scale), face=face(idx)))
    facets = tuple(facets)

    top = face(tuple(range(len(verts))))
    children: dict[tuple, tuple[Face, ...]] = {top.vertex_indices: tuple(f.face for f in facets)}
    level = [f.face for f in facets]
    facet_sets = [set(f.face.vertex_indices) for f in facets]
    for j in range(d - 1, 0, -1):
        nxt: dict[tuple, Face] = {}
        for fc in level:
            fs = set(fc.vertex_indices)
            kids = []
            for s in facet_sets:
                if fs <= s:
                    continue
                cand = tuple(sorted(fs & s))
                if not cand:
                    continue
                if cand not in dims:
                    dims[cand] = _affine_dim([verts[i] for i in cand])
                if dims[cand] == j - 1 and cand not in kids:
                    kids.append(cand)
            children[fc.vertex_indices] = tuple(face(k) for k in sorted(kids))
            for k in kids:
                nxt[k] = face(k)
        level = list(nxt.values())
    return RationalPolytope(verts, facets, faces, children)


# -- measurements -----------------------------------------------------------


def triangulate(P: RationalPolytope, face: Face | None = None, apex: int | None = None) -> list[tuple[int, ...]]:
    """Pulling triangulation of a face (default: the whole polytope).

    The top-level apex can be chosen; lower levels always pull from their
    smallest vertex index, which keeps the pieces consistent.
    """
    face = P.top if face is None else face
    if apex is None:
        apex = face.vertex_indices[0]
    elif apex not in face.vertex_indices:
        raise ValueError(f"apex {apex} is not a vertex of {face}")
    if face.dim == 0:
        return [face.vertex_indices]
    out = []
    for g in P.subfaces(face):
        if apex in g.vertex_indices:
            continue
        for simplex in triangulate(P, g):
            out.append((apex,) + simplex)
    return out


def _simplex_proxy(P: RationalPolytope, simplex: tuple[int, ...], coords: Sequence[int]) -> Fraction:
    v0 = P.vertices[simplex[0]]
    rows = [[P.vertices[i][c] - v0[c] for c in coords] for i in simplex[1:]]
    return abs(Q.det(rows)) / math.factorial(len(coords))


def volume(P: RationalPolytope, apex: int | None = None) -> Fraction:
    """Exact d-volume: sum of |det|/d! over a pulling triangulation."""
    coords = range(P.dim)
    return sum((_simplex_proxy(P, s, coords) for s in triangulate(P, apex=apex)), Fraction(0))


def projection_coords(span: Sequence[Sequence], d: int) -> tuple[int, ...]:
    """First coordinate subset (lexicographic) on which ``span`` projects injectively."""
    k = len(span)
    for coords in itertools.combinations(range(d), k):
        if Q.det([[v[c] for c in coords] for v in span]) != 0:
            return coords
    raise ValueError("span vectors are dependent")


def face_volume_proxy(P: RationalPolytope, face: Face, coords: Sequence[int]) -> Fraction:
    """Volume of the coordinate projection of a face onto ``coords``.

    The face must have dimension len(coords); parallel faces projected onto
    the same coordinates compare exactly like their true volumes.
    """
    if face.dim != len(coords):
        raise ValueError("face dimension does not match projection")
    if face.dim == 0:
        return Fraction(1)
    return sum((_simplex_proxy(P, s, coords) for s in triangulate(P, face)), Fraction(0))


def face_volume(P: RationalPolytope, face: Face) -> float:
    """True relative volume of a face (one square root, floating point)."""
    if face.dim == 0:
        return 1.0
    coords = projection_coords(face.span, P.dim)
    proxy = face_volume_proxy(P, face, coords)
    factor = Q.gram_det(face.span) / Q.det([[v[c] for c in coords] for v in face.span]) ** 2
    return float(proxy) * math.sqrt(factor)


def _check_direction(n: Sequence) -> tuple:
    n = Q.to_vector(n, "direction")
    if Q.is_zero(n):
        raise ZeroDirection("direction vector is zero")
    return n


def support_subface(P: RationalPolytope, face: Face, n: Sequence) -> Face:
    """Face of ``face`` on which <n, x> is maximal (``face`` itself if constant)."""
    values = {i: Q.dot(n, P.vertices[i]) for i in face.vertex_indices}
    best = max(values.values())
    return P.face_by_vertices(i for i, val in values.items() if val == best)


def support_face(P: RationalPolytope, n: Sequence) -> Face:
    """Face of P maximizing <n, x>; any dimension from 0 to d-1."""
    n = _check_direction(n)
    return support_subface(P, P.top, n)


def facet_pair_volumes(P: RationalPolytope, n: Sequence) -> tuple[Fraction, Fraction]:
    """Comparable volume proxies of the support faces in directions n and -n.

    Both faces are projected onto the coordinate hyperplane that drops the
    coordinate where |n_i| is largest; lower-dimensional support faces give 0.
    """
    n = _check_direction(n)
    drop = max(range(P.dim), key=lambda i: (abs(n[i]), -i))
    coords = tuple(c for c in range(P.dim) if c != drop)
    out = []
    for direction in (n, Q.neg(n)):
        f = support_subface(P, P.top, direction)
        out.append(face_volume_proxy(P, f, coords) if f.dim == P.dim - 1 else Fraction(0))
    return out[0], out[1]


def classify_point(P: RationalPolytope, x: Sequence) -> Location:
    """Exact interior / boundary / exterior test; boundary reports the minimal face."""
    x = Q.to_vector(x, "point")
    slacks = P.facet_slacks(x)
    if any(s > 0 for s in slacks):
        return Location(PointClass.EXTERIOR)
    active = [f for f, s in zip(P.facets, slacks) if s == 0]
    if not active:
        return Location(PointClass.INTERIOR)
    common = set(active[0].face.vertex_indices)
    for f in active[1:]:
        common &= set(f.face.vertex_indices)
    return Location(PointClass.BOUNDARY, P.face_by_vertices(common))
