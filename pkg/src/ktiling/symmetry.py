"""Minkowski-type necessary conditions: central symmetry of P and its facets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import rational as Q
from .errors import EmptyInput
from .polytope import RationalPolytope

PASS = "Pass"
FAIL_BODY = "FailBody"
FAIL_FACET = "FailFacet"


def symmetry_center(vertex_set: Sequence[Sequence]):
    """Center of symmetry of a finite point set, or None.

    A centrally symmetric vertex set pairs up under x -> 2c - x, so c must be
    the vertex mean; it only remains to check that the reflection permutes
    the set.
    """
    if not vertex_set:
        raise EmptyInput("empty vertex set")
    pts = [Q.to_vector(v) for v in vertex_set]
    c = Q.centroid(pts)
    twice = Q.scale(2, c)
    s = set(pts)
    if all(Q.sub(twice, p) in s for p in pts):
        return c
    return None


@dataclass(frozen=True)
class FacetReport:
    facet_index: int
    symmetric: bool
    center: tuple | None


@dataclass(frozen=True)
class SymmetryVerdict:
    body_center: tuple | None
    body_symmetric: bool
    facet_reports: tuple[FacetReport, ...]
    failed_facets: tuple[int, ...] = field(default=())

    @property
    def overall(self) -> str:
        if not self.body_symmetric:
            return FAIL_BODY
        if self.failed_facets:
            return FAIL_FACET
        return PASS

    @property
    def passed(self) -> bool:
        return self.overall == PASS

    def to_json(self) -> dict:
        pt = lambda c: None if c is None else [Q.fraction_str(x) for x in c]  # noqa: E731
        return {
            "overall": self.overall,
            "bodySymmetric": self.body_symmetric,
            "bodyCenter": pt(self.body_center),
            "failedFacets": list(self.failed_facets),
            "facetReports": [
                {"facetIndex": r.facet_index, "symmetric": r.symmetric, "center": pt(r.center)}
                for r in self.facet_reports
            ],
        }


def minkowski_verdict(P: RationalPolytope) -> SymmetryVerdict:
    """Check central symmetry of P and of each facet (in ambient coordinates)."""
    body = symmetry_center(P.vertices)
    reports = []
    for i, f in enumerate(P.facets):
        c = symmetry_center(P.face_vertices(f.face))
        reports.append(FacetReport(i, c is not None, c))
    failed = tuple(r.facet_index for r in reports if not r.symmetric)
    return SymmetryVerdict(body, body is not None, tuple(reports), failed)
