"""Solid angles of a polytope at points, and their sums over Lambda.

At a point in the relative interior of a face F of dimension j the tangent
cone of P is span(F) times a pointed cone of dimension r = d - j, so the solid
angle only depends on F and on that reduced cone:

* r = 1: a half-space, exactly 1/2;
* r = 2: a planar wedge, angle / 2pi;
* r = 3: a spherical polygon, summed over a fan of simplicial cones with the
  Van Oosterom-Strackee formula;
* r = 4: Monte Carlo over Gaussian directions, with a 6-sigma error bound.

Dot products and Gram determinants are exact rationals; only the final
square roots and arctangents are floating point.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import rational as Q
from .lattice import TranslationMultiset
from .polytope import Face, PointClass, RationalPolytope, classify_point
from .tiling import points_in_translate

MC_SAMPLES = 1_000_000
MC_SIGMAS = 6.0
PLANAR_ERROR = 1e-14
SPHERICAL_ERROR = 1e-12


@dataclass(frozen=True)
class SolidAngleValue:
    value: float
    error_bound: float
    method: str  # "Exact", "Exact2D", "Exact3D" or "MonteCarlo(<samples>)"


def _cover_faces(P: RationalPolytope, face: Face, extra: int) -> list[Face]:
    s = set(face.vertex_indices)
    return [g for g in P.faces_of_dim(face.dim + extra) if s.issubset(g.vertex_indices)]


def _ray(P: RationalPolytope, face: Face, g: Face) -> tuple:
    """Direction from F into the cover face G, projected off span(F)."""
    w = Q.sub(Q.centroid(P.face_vertices(g)), Q.centroid(P.face_vertices(face)))
    return Q.sub(w, Q.project_onto_span(w, face.span))


def _norm(v) -> float:
    return math.sqrt(Q.dot(v, v))


def _wedge(a, b) -> float:
    """Planar angle between two rays (exact Lagrange identity under the root)."""
    cross2 = Q.dot(a, a) * Q.dot(b, b) - Q.dot(a, b) ** 2
    return math.atan2(math.sqrt(cross2), Q.dot(a, b))


def _simplicial_3(a, b, c) -> float:
    """Solid angle (steradians) of the cone spanned by three rays."""
    triple = math.sqrt(Q.gram_det([a, b, c]))
    na, nb, nc = _norm(a), _norm(b), _norm(c)
    denom = na * nb * nc + float(Q.dot(a, b)) * nc + float(Q.dot(a, c)) * nb + float(Q.dot(b, c)) * na
    return 2.0 * math.atan2(triple, denom)


def _monte_carlo(P: RationalPolytope, face: Face, samples: int, seed: int) -> SolidAngleValue:
    normals = np.array([f.normal for f in P.facets_containing(face)], dtype=float)
    key = zlib.crc32(repr((face.vertex_indices, normals.tolist())).encode())
    rng = np.random.default_rng([seed, key])
    hits = 0
    remaining = samples
    while remaining:
        n = min(remaining, 250_000)
        y = rng.standard_normal((n, P.dim))
        hits += int(np.count_nonzero(np.all(y @ normals.T <= 0.0, axis=1)))
        remaining -= n
    p = hits / samples
    stderr = math.sqrt(max(p * (1 - p), 1.0 / samples) / samples)
    return SolidAngleValue(p, MC_SIGMAS * stderr, f"MonteCarlo({samples})")


@lru_cache(maxsize=None)
def face_solid_angle(P: RationalPolytope, face: Face, samples: int = MC_SAMPLES, seed: int = 0) -> SolidAngleValue:
    """Solid angle of P at any relative-interior point of ``face``."""
    r = P.dim - face.dim
    if r == 0:
        return SolidAngleValue(1.0, 0.0, "Exact")
    if r == 1:
        return SolidAngleValue(0.5, 0.0, "Exact")
    if r == 2:
        a, b = (_ray(P, face, g) for g in _cover_faces(P, face, 1))
        return SolidAngleValue(_wedge(a, b) / (2 * math.pi), PLANAR_ERROR, "Exact2D")
    if r == 3:
        gs = _cover_faces(P, face, 1)
        rays = {g.vertex_indices: _ray(P, face, g) for g in gs}
        g0 = gs[0].vertex_indices
        total = 0.0
        for h in _cover_faces(P, face, 2):
            hs = set(h.vertex_indices)
            pair = [k for k in rays if hs.issuperset(k)]
            if g0 in pair:
                continue
            total += _simplicial_3(rays[g0], rays[pair[0]], rays[pair[1]])
        return SolidAngleValue(total / (4 * math.pi), SPHERICAL_ERROR, "Exact3D")
    return _monte_carlo(P, face, samples, seed)


def solid_angle(P: RationalPolytope, x: Sequence) -> SolidAngleValue:
    """Fraction of a small ball around x that lies in P."""
    loc = classify_point(P, x)
    if loc.kind is PointClass.INTERIOR:
        return SolidAngleValue(1.0, 0.0, "Exact")
    if loc.kind is PointClass.EXTERIOR:
        return SolidAngleValue(0.0, 0.0, "Exact")
    return face_solid_angle(P, loc.face)


@dataclass(frozen=True)
class AngleSum:
    sum: float
    error_bound: float
    contributions: tuple  # ((point, multiplicity, SolidAngleValue), ...)

    def to_json(self) -> dict:
        return {
            "sum": self.sum,
            "errorBound": self.error_bound,
            "contributions": [
                {
                    "point": [Q.fraction_str(x) for x in p],
                    "multiplicity": m,
                    "angle": a.value,
                    "errorBound": a.error_bound,
                    "method": a.method,
                }
                for p, m, a in self.contributions
            ],
        }


def solid_angle_sum(P: RationalPolytope, Lam: TranslationMultiset, v: Sequence) -> AngleSum:
    """Sum of solid angles of P + v over all points of Lambda (any v, generic or not)."""
    v = Q.to_vector(v, "v")
    contributions = []
    for p, mult, loc in points_in_translate(Lam, P, v):
        if loc.kind is PointClass.INTERIOR:
            a = SolidAngleValue(1.0, 0.0, "Exact")
        else:
            a = face_solid_angle(P, loc.face)
        contributions.append((p, mult, a))
    total = math.fsum(m * a.value for _, m, a in contributions)
    err = math.fsum(m * a.error_bound for _, m, a in contributions)
    return AngleSum(total, err, tuple(contributions))
