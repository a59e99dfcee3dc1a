"""Boundary operators on indicator functions of faces.

``d_n 1_F = 1_{F+} - 1_{F-}`` where F+ and F- are the faces of F on which
<n, .> is maximal and minimal.  Iterating over an orthogonal frame produces
integer combinations of faces (:class:`SignedFaceSum`).  For a k-tiler two
quantities built from these sums vanish: the signed relative volume of the
codimension-m part, and the signed count of Lambda points on the faces of a
general-position translate.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rational as Q
from .errors import (
    ExhaustedAttempts,
    InputError,
    NonOrthogonalDirection,
    NotGeneralPosition,
    ZeroDirection,
)
from .lattice import TranslationMultiset
from .polytope import Face, RationalPolytope, face_volume_proxy, projection_coords
from .tiling import SAMPLING_PRIME


@dataclass(frozen=True)
class Frame:
    """Ordered, pairwise orthogonal, nonzero rational directions."""

    directions: tuple = ()

    def __post_init__(self):
        dirs = tuple(Q.to_vector(n, f"frame[{i}]") for i, n in enumerate(self.directions))
        object.__setattr__(self, "directions", dirs)
        for i, n in enumerate(dirs):
            if Q.is_zero(n):
                raise ZeroDirection(f"frame direction {i} is zero")
            if len(n) != len(dirs[0]):
                raise InputError("frame directions have different lengths")
            for j in range(i):
                if Q.dot(n, dirs[j]) != 0:
                    raise NonOrthogonalDirection(f"frame directions {j} and {i} are not orthogonal")

    @classmethod
    def parse(cls, text: str) -> "Frame":
        """``"1,0;0,1"`` -> Frame(((1, 0), (0, 1))); empty string is the empty frame."""
        if not text.strip():
            return cls(())
        return cls(tuple(Q.parse_vector(part, f"frame[{i}]") for i, part in enumerate(text.split(";"))))

    def __len__(self):
        return len(self.directions)

    def then(self, n: Sequence) -> "Frame":
        return Frame(self.directions + (Q.to_vector(n),))

    def to_json(self) -> list:
        return [[Q.fraction_str(x) for x in n] for n in self.directions]


@dataclass(frozen=True)
class SignedFaceSum:
    polytope: RationalPolytope
    terms: tuple  # ((Face, coefficient), ...), sorted, coefficients nonzero
    frame: Frame

    def as_dict(self) -> dict[tuple, int]:
        return {f.vertex_indices: c for f, c in self.terms}

    def to_json(self) -> list:
        P = self.polytope
        return [
            {
                "dim": f.dim,
                "coefficient": c,
                "vertices": [[Q.fraction_str(x) for x in P.vertices[i]] for i in f.vertex_indices],
            }
            for f, c in self.terms
        ]


def identity_sum(P: RationalPolytope) -> SignedFaceSum:
    return SignedFaceSum(P, ((P.top, 1),), Frame(()))


def apply_boundary(s: SignedFaceSum, n: Sequence) -> SignedFaceSum:
    """One more boundary operator; terms where <n, .> is constant cancel."""
    n = Q.to_vector(n, "direction")
    if Q.is_zero(n):
        raise ZeroDirection("direction vector is zero")
    for i, m in enumerate(s.frame.directions):
        if Q.dot(n, m) != 0:
            raise NonOrthogonalDirection(f"direction is not orthogonal to frame direction {i}")
    P = s.polytope
    acc: dict[tuple, int] = defaultdict(int)
    for face, c in s.terms:
        values = {i: Q.dot(n, P.vertices[i]) for i in face.vertex_indices}
        hi, lo = max(values.values()), min(values.values())
        if hi == lo:
            continue
        acc[tuple(i for i, x in values.items() if x == hi)] += c
        acc[tuple(i for i, x in values.items() if x == lo)] -= c
    faces = [(P.face_by_vertices(k), c) for k, c in acc.items() if c != 0]
    faces.sort(key=lambda fc: (fc[0].dim, fc[0].vertex_indices))
    return SignedFaceSum(P, tuple(faces), s.frame.then(n))


def apply_frame(P: RationalPolytope, frame: Frame | Sequence) -> SignedFaceSum:
    """Compose boundary operators n_1 first, n_m last; the empty frame is the identity."""
    frame = frame if isinstance(frame, Frame) else Frame(tuple(frame))
    s = identity_sum(P)
    for n in frame.directions:
        s = apply_boundary(s, n)
    return s


def signed_volume(s: SignedFaceSum) -> Fraction:
    """Signed (d-m)-volume of the terms, as an exact proxy.

    All full-dimensional terms are parallel to the orthogonal complement of the
    frame, so one coordinate projection serves them all; the result is zero
    exactly when the true signed volume is.  Lower-dimensional terms add 0.
    With m = d, terms are points counted with their coefficients.
    """
    P = s.polytope
    j = P.dim - len(s.frame)
    if j == 0:
        return Fraction(sum(c for _, c in s.terms))
    complement = Q.orthogonal_complement(s.frame.directions, P.dim) if s.frame.directions else tuple(
        tuple(Fraction(int(a == b)) for b in range(P.dim)) for a in range(P.dim)
    )
    coords = projection_coords(complement, P.dim)
    return sum(
        (c * face_volume_proxy(P, f, coords) for f, c in s.terms if f.dim == j), Fraction(0)
    )


def _face_box(P: RationalPolytope, face: Face, v: Sequence):
    pts = P.face_vertices(face)
    lo = tuple(min(p[i] for p in pts) + v[i] for i in range(P.dim))
    hi = tuple(max(p[i] for p in pts) + v[i] for i in range(P.dim))
    return lo, hi


def lambda_face_counts(
    P: RationalPolytope, frame: Frame | Sequence, v: Sequence, Lam: TranslationMultiset
) -> list[tuple[Face, int, int]]:
    """(face, coefficient, #Lambda points on face + v) for every term of d_frame 1_P.

    ``v`` must be in general position for the frame: every Lambda point on a
    term face must lie in its interior relative to the (d-m)-flat it spans.
    Points on lower-dimensional terms or on relative boundaries raise
    NotGeneralPosition.
    """
    v = Q.to_vector(v, "v")
    s = apply_frame(P, frame)
    j = P.dim - len(s.frame)
    out = []
    for face, c in s.terms:
        count = 0
        for p, mult in Lam.points_in_box(*_face_box(P, face, v)):
            x = Q.sub(p, v)
            if not P.in_face(x, face):
                continue
            if face.dim < j or (face.dim > 0 and not P.in_relative_interior(x, face)):
                raise NotGeneralPosition(
                    f"lattice point {[Q.fraction_str(t) for t in p]} lies on the relative "
                    f"boundary of a frame face",
                    point=p,
                    face=face,
                )
            count += mult
        out.append((face, c, count))
    return out


def discrete_lambda_sum(
    P: RationalPolytope, frame: Frame | Sequence, v: Sequence, Lam: TranslationMultiset
) -> int:
    """Signed count of Lambda points on the faces of d_frame 1_{P+v}."""
    return sum(c * count for _, c, count in lambda_face_counts(P, frame, v, Lam))


def sample_frame_position(
    P: RationalPolytope,
    frame: Frame | Sequence,
    Lam: TranslationMultiset,
    seed=0,
    max_attempts: int = 100,
) -> tuple:
    """Translate v in general position for the frame that puts a Lambda point on a face.

    A random lattice point is placed at a random relative-interior point of a
    random full-dimensional term face, so the identity is tested with
    nonempty faces rather than trivially.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    s = apply_frame(P, frame)
    j = P.dim - len(s.frame)
    targets = [f for f, _ in s.terms if f.dim == j]
    for _ in range(max_attempts):
        comp = rng.choice(Lam.components)
        z = tuple(rng.randint(-2, 2) for _ in range(P.dim))
        lam = Q.add(Q.matvec(comp.basis, z), comp.offset)
        if targets:
            face = rng.choice(targets)
            weights = [Fraction(rng.randrange(1, SAMPLING_PRIME), SAMPLING_PRIME) for _ in face.vertex_indices]
            total = sum(weights)
            pts = P.face_vertices(face)
            p = tuple(sum(w * q[i] for w, q in zip(weights, pts)) / total for i in range(P.dim))
        else:
            p = tuple(Fraction(rng.randrange(SAMPLING_PRIME), SAMPLING_PRIME) for _ in range(P.dim))
        v = Q.sub(lam, p)
        try:
            discrete_lambda_sum(P, s.frame, v, Lam)
        except NotGeneralPosition:
            continue
        return v
    raise ExhaustedAttempts(f"no frame general-position translate in {max_attempts} attempts")
