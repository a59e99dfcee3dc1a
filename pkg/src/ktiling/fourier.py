"""Fourier transform of polytope indicator functions.

``hat_indicator`` evaluates  int_F exp(2 pi i <xi, x>) dx  by descending the
face lattice.  If xi projects to zero on the direction space of F, the phase
is constant on F and the integral is vol(F) exp(2 pi i Phi).  Otherwise the
divergence theorem on F reduces it to the facets G of F:

    hat 1_F(xi) = 1/(2 pi i) * sum_G <proj_F xi, n_G> / |proj_F xi|^2 * hat 1_G(xi)

with n_G the outward unit normal of G inside aff(F).  Projections and the
inner products are exact rationals, so the zero test is exact.  The unit
normals, face volumes and exponentials are evaluated with mpmath.

``hat_quadrature`` is an independent check: Gauss-Legendre tensor rules on
each simplex of a triangulation, with the order raised until two successive
estimates agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import rational as Q
from .errors import ToleranceNotReached
from .polytope import Face, RationalPolytope, face_volume_proxy, projection_coords, triangulate, volume

DEFAULT_DPS = 30


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float
    error_bound: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "errorBound": self.error_bound}


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _face_volume_mp(P: RationalPolytope, face: Face):
    if face.dim == 0:
        return mpmath.mpf(1)
    if face.dim == P.dim:
        return _mpf(volume(P))
    coords = projection_coords(face.span, P.dim)
    proxy = face_volume_proxy(P, face, coords)
    factor = Q.gram_det(face.span) / Q.det([[v[c] for c in coords] for v in face.span]) ** 2
    return _mpf(proxy) * mpmath.sqrt(_mpf(factor))


def hat_indicator(
    P: RationalPolytope, xi: Sequence, face: Face | None = None, dps: int = DEFAULT_DPS
) -> ComplexValue:
    """Fourier transform of the indicator of P (or of one of its faces) at xi."""
    xi = Q.to_vector(xi, "xi")
    if len(xi) != P.dim:
        raise ValueError("frequency dimension does not match the polytope")
    face = P.top if face is None else face
    memo: dict[tuple, tuple] = {}
    identity = tuple(tuple(Fraction(int(i == j)) for j in range(P.dim)) for i in range(P.dim))

    def centroid(f: Face):
        return Q.centroid(P.face_vertices(f))

    def hat(f: Face):
        key = f.vertex_indices
        if key in memo:
            return memo[key]
        span = identity if f.dim == P.dim else f.span
        proj = Q.project_onto_span(xi, span)
        if Q.is_zero(proj):
            vol = _face_volume_mp(P, f)
            phase = _mpf(Q.dot(xi, f.point))
            result = (vol * mpmath.expjpi(2 * phase), vol)
        else:
            pp = Q.dot(proj, proj)
            c_f = centroid(f)
            total = mpmath.mpc(0)
            magnitude = mpmath.mpf(0)
            for g in P.subfaces(f):
                w = Q.sub(centroid(g), c_f)
                w = Q.sub(w, Q.project_onto_span(w, g.span))
                ratio = Q.dot(proj, w) / pp
                if ratio == 0:
                    continue
                coef = _mpf(ratio) / mpmath.sqrt(_mpf(Q.dot(w, w)))
                value, mag = hat(g)
                total += coef * value
                magnitude += abs(coef) * mag
            two_pi = 2 * mpmath.pi
            result = (total / (two_pi * mpmath.mpc(0, 1)), magnitude / two_pi)
        memo[key] = result
        return result

    with mpmath.workdps(dps):
        value, magnitude = hat(face)
        # rounding in each operation is relative to the terms, not the (possibly
        # heavily cancelled) total
        err = float(magnitude) * 10.0 ** (3 - dps)
        return ComplexValue(float(value.real), float(value.imag), err)


# -- quadrature oracle ------------------------------------------------------

_MAX_ORDER = {1: 4096, 2: 1024, 3: 128, 4: 48}


def _simplex_rule(d: int, n: int):
    """Nodes (barycentric t, shape (m, d)) and weights of a collapsed tensor rule."""
    x, w = np.polynomial.legendre.leggauss(n)
    x = (x + 1) / 2
    w = w / 2
    grids = np.meshgrid(*([x] * d), indexing="ij")
    wgrids = np.meshgrid(*([w] * d), indexing="ij")
    u = np.stack([g.ravel() for g in grids], axis=1)
    weight = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    t = np.empty_like(u)
    remaining = np.ones(u.shape[0])
    for k in range(d):
        t[:, k] = remaining * u[:, k]
        weight = weight * remaining
        remaining = remaining * (1 - u[:, k])
    return t, weight


def _integrate_simplex(verts: np.ndarray, xi: np.ndarray, n: int) -> complex:
    d = verts.shape[1]
    t, weight = _simplex_rule(d, n)
    edges = verts[1:] - verts[0]
    jac = abs(np.linalg.det(edges))
    x = verts[0] + t @ edges
    return complex(jac * np.sum(weight * np.exp(2j * np.pi * (x @ xi))))


def hat_quadrature(P: RationalPolytope, xi: Sequence, tolerance: float = 1e-8) -> ComplexValue:
    """Independent numerical evaluation of the same transform."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    xi_v = np.array([float(x) for x in Q.to_vector(xi, "xi")])
    simplices = [
        np.array([[float(c) for c in P.vertices[i]] for i in s]) for s in triangulate(P)
    ]
    max_order = _MAX_ORDER[P.dim]
    total = 0j
    err = 0.0
    for verts in simplices:
        # start near the number of oscillations along the longest edge
        waves = float(np.max(np.abs((verts[1:] - verts[0]) @ xi_v)))
        n = max(4, math.ceil(2 * waves))
        prev = _integrate_simplex(verts, xi_v, n)
        while True:
            n = n + max(2, n // 2)
            if n > max_order:
                raise ToleranceNotReached(f"quadrature order budget {max_order} exhausted")
            cur = _integrate_simplex(verts, xi_v, n)
            diff = abs(cur - prev)
            prev = cur
            if diff <= tolerance / (2 * len(simplices)):
                break
        total += prev
        err += diff
    return ComplexValue(total.real, total.imag, err + 1e-14 * len(simplices))


def box_transform(lo: Sequence, hi: Sequence, xi: Sequence) -> complex:
    """Closed form for an axis-parallel box: product of one-dimensional transforms."""
    out = 1 + 0j
    for a, b, x in zip(lo, hi, xi):
        a, b, x = float(a), float(b), float(x)
        if x == 0:
            out *= b - a
        else:
            out *= (np.exp(2j * math.pi * x * b) - np.exp(2j * math.pi * x * a)) / (2j * math.pi * x)
    return complex(out)
