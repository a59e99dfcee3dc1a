from __future__ import annotations

import itertools
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ktiling import rational as Q
from ktiling.errors import DegenerateInput, DimensionUnsupported, InputError, ZeroDirection
from ktiling.fixtures import FIXTURES, fixture
from ktiling.polytope import (
    PointClass,
    build_polytope,
    classify_point,
    face_volume,
    facet_pair_volumes,
    support_face,
    triangulate,
    volume,
)

from conftest import square


def monotone_chain(points):
    """Independent planar hull (Andrew's algorithm), counterclockwise."""
    pts = sorted(set(points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace(ring):
    n = len(ring)
    return abs(sum(ring[i][0] * ring[(i + 1) % n][1] - ring[(i + 1) % n][0] * ring[i][1] for i in range(n))) / 2


coord = st.fractions(min_value=-4, max_value=4, max_denominator=4)
point2 = st.tuples(coord, coord)
cloud2 = st.lists(point2, min_size=3, max_size=12)


def _planar(points):
    hull = monotone_chain(points)
    assume(len(hull) >= 3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_polytope(points), hull


def test_square_facets():
    P = square()
    assert [f.normal for f in P.facets] == [(1, 0), (0, 1), (0, -1), (-1, 0)]
    assert volume(P) == 1


def test_oct7_area_matches_shoelace(oct7):
    ring = monotone_chain(oct7.vertices)
    assert shoelace(ring) == 7 == volume(oct7)


def test_cell24_facets_match_brute_force(cell24):
    # facet normals of this 24-cell lie in {-1,0,1}^4; test every candidate
    found = set()
    for a in itertools.product((-1, 0, 1), repeat=4):
        if not any(a):
            continue
        b = max(Q.dot(a, v) for v in cell24.vertices)
        touching = [v for v in cell24.vertices if Q.dot(a, v) == b]
        if Q.rank([Q.sub(v, touching[0]) for v in touching[1:]]) == 3:
            found.add((Q.primitive(a), b))
    assert found == {(f.normal, f.offset) for f in cell24.facets}
    assert len(found) == 24


def test_cell24_face_counts(cell24):
    assert [len(cell24.faces_of_dim(j)) for j in range(4)] == [24, 96, 96, 24]
    assert volume(cell24) == 8


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_fixture_volumes(fx):
    assert volume(fx.polytope()) == fx.volume


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_euler_characteristic(fx):
    P = fx.polytope()
    counts = [len(P.faces_of_dim(j)) for j in range(P.dim)]
    assert sum((-1) ** j * c for j, c in enumerate(counts)) == 1 - (-1) ** P.dim


@given(cloud2)
def test_planar_hull_matches_oracle(points):
    P, hull = _planar(points)
    assert set(P.vertices) == set(hull)
    assert volume(P) == shoelace(hull)


@given(cloud2, point2)
def test_translation_invariance(points, t):
    P, _ = _planar(points)
    Pt = P.translated(t)
    assert volume(Pt) == volume(P)
    assert sorted(f.normal for f in Pt.facets) == sorted(f.normal for f in P.facets)


@given(cloud2, st.randoms(use_true_random=False))
def test_input_order_does_not_matter(points, rnd):
    P, _ = _planar(points)
    shuffled = list(points)
    rnd.shuffle(shuffled)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        Q2 = build_polytope(shuffled)
    assert set(Q2.vertices) == set(P.vertices)
    assert {(f.normal, f.offset) for f in Q2.facets} == {(f.normal, f.offset) for f in P.facets}


@pytest.mark.parametrize("name", ["oct7", "cube", "hexprism", "simplex3", "cell24"])
def test_volume_independent_of_apex(name):
    P = fixture(name).polytope()
    vols = {volume(P, apex=a) for a in range(0, len(P.vertices), 3)}
    assert vols == {fixture(name).volume}


@pytest.mark.parametrize("name", ["oct7", "cube", "octahedron"])
def test_triangulation_simplices_are_full(name):
    P = fixture(name).polytope()
    for s in triangulate(P):
        assert len(s) == P.dim + 1


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_boundary_closes_up(fx):
    # sum of outward unit normals weighted by facet volume vanishes
    P = fx.polytope()
    total = [0.0] * P.dim
    for f in P.facets:
        n = f.normal
        norm = sum(x * x for x in n) ** 0.5
        area = face_volume(P, f.face)
        total = [t + area * x / norm for t, x in zip(total, n)]
    assert max(abs(t) for t in total) < 1e-12


def test_edge_vectors_close_up(oct7):
    ring = monotone_chain(oct7.vertices)
    edges = [Q.sub(ring[(i + 1) % len(ring)], ring[i]) for i in range(len(ring))]
    assert Q.is_zero(tuple(sum(e[i] for e in edges) for i in range(2)))
    assert len(oct7.faces_of_dim(1)) == len(edges)


def test_triangle_pair_volumes():
    T = fixture("triangle").polytope()
    assert facet_pair_volumes(T, (1, 0)) == (0, 1)


def test_oct7_pair_volumes(oct7):
    assert facet_pair_volumes(oct7, (1, 1)) == (1, 1)
    assert support_face(oct7, (1, 0)).dim == 1


@pytest.mark.parametrize("fx", [f for f in FIXTURES if f.symmetry == "Pass"], ids=lambda f: f.name)
def test_symmetric_bodies_have_equal_pairs(fx):
    P = fx.polytope()
    for f in P.facets:
        a, b = facet_pair_volumes(P, f.normal)
        assert a == b > 0


def test_classify_points(oct7):
    assert classify_point(oct7, (0, 0)).kind is PointClass.INTERIOR
    loc = classify_point(oct7, (1, 1))
    assert loc.kind is PointClass.BOUNDARY and loc.face.dim == 1
    vloc = classify_point(oct7, (F(3, 2), F(1, 2)))
    assert vloc.face.dim == 0
    assert classify_point(oct7, (2, 0)).kind is PointClass.EXTERIOR


def test_non_extreme_points_dropped_with_warning():
    with pytest.warns(UserWarning, match="non-extreme"):
        P = build_polytope([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
    assert len(P.vertices) == 4


@pytest.mark.parametrize(
    "pts,exc",
    [
        ([(0,), (1,)], DimensionUnsupported),
        ([(0, 0), (1, 1), (2, 2)], DegenerateInput),
        ([(0, 0), (1, 0)], DegenerateInput),
        ([], DegenerateInput),
        ([(0, 0), (1, 0, 0)], InputError),
        ([(0.5, 0), (1, 0), (0, 1)], InputError),
    ],
)
def test_rejects_bad_input(pts, exc):
    with pytest.raises(exc):
        build_polytope(pts)


def test_zero_direction():
    with pytest.raises(ZeroDirection):
        support_face(square(), (0, 0))
