from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktiling import rational as Q
from ktiling.boundary import (
    Frame,
    apply_boundary,
    apply_frame,
    discrete_lambda_sum,
    identity_sum,
    lambda_face_counts,
    sample_frame_position,
    signed_volume,
)
from ktiling.errors import NonOrthogonalDirection, NotGeneralPosition, ZeroDirection
from ktiling.fixtures import fixture
from ktiling.lattice import LatticeComponent, TranslationMultiset

from conftest import square


def _named(s):
    P = s.polytope
    return {tuple(P.vertices[i] for i in f.vertex_indices): c for f, c in s.terms}


def test_square_single_direction():
    s = apply_frame(square(), [(1, 0)])
    assert _named(s) == {((1, 0), (1, 1)): 1, ((0, 0), (0, 1)): -1}
    assert signed_volume(s) == 0


def test_square_full_frame_gives_signed_corners():
    s = apply_frame(square(), [(1, 0), (0, 1)])
    assert _named(s) == {((0, 0),): 1, ((1, 0),): -1, ((0, 1),): -1, ((1, 1),): 1}
    assert signed_volume(s) == 0


def test_triangle_boundary():
    T = fixture("triangle").polytope()
    s = apply_frame(T, [(1, 0)])
    assert _named(s) == {((1, 0),): 1, ((0, 0), (0, 1)): -1}
    assert signed_volume(s) == -1


def test_simplex_signed_volume():
    assert signed_volume(apply_frame(fixture("simplex3").polytope(), [(1, 0, 0)])) == F(-1, 2)


def test_empty_frame_is_identity(oct7):
    s = apply_frame(oct7, [])
    assert s == identity_sum(oct7)
    assert signed_volume(s) == 7


def test_parallel_face_cancels():
    # the second operator kills faces on which <n, .> is constant
    s = apply_boundary(apply_frame(square(), [(1, 0)]), (0, 1))
    assert all(f.dim == 0 for f, _ in s.terms)


def test_frame_validation():
    with pytest.raises(ZeroDirection):
        Frame(((0, 0),))
    with pytest.raises(NonOrthogonalDirection):
        Frame(((1, 0), (1, 1)))
    with pytest.raises(NonOrthogonalDirection):
        apply_boundary(apply_frame(square(), [(1, 0)]), (1, 1))
    assert Frame.parse("1,0;0,1") == Frame(((1, 0), (0, 1)))
    assert len(Frame.parse("")) == 0


def test_discrete_sum_at_shifted_translate(oct7, z2):
    # no lattice point lies on a vertical edge here, so the sum is trivially 0
    assert discrete_lambda_sum(oct7, [(1, 0)], (F(1, 10), F(1, 10)), z2) == 0


def test_lattice_point_on_face_boundary_rejected(z2):
    # (0,0) and (0,1) are endpoints of the edge x = 0
    with pytest.raises(NotGeneralPosition):
        discrete_lambda_sum(square(), [(1, 0)], (0, 0), z2)


def test_lattice_point_on_low_dimensional_term_rejected():
    # the triangle's term +vertex(1,0) is a point; the coset (1,0) + 2Z^2 hits it
    # and misses the other term, the edge x = 0
    T = fixture("triangle").polytope()
    odd = TranslationMultiset([LatticeComponent(((2, 0), (0, 2)), (1, 0))])
    with pytest.raises(NotGeneralPosition) as info:
        discrete_lambda_sum(T, [(1, 0)], (0, 0), odd)
    assert info.value.face.dim == 0


def test_triangle_discrete_sum_nonzero(z2):
    T = fixture("triangle").polytope()
    v = (0, F(-1, 3))  # (0, 0) lies inside the edge x = 0, nothing else is hit
    assert discrete_lambda_sum(T, [(1, 0)], v, z2) == -1


@pytest.mark.parametrize("frame", [[(1, 0)], [(1, 1)], [(1, 1), (1, -1)], [(0, 1), (1, 0)]])
def test_anchored_samples_hit_faces(oct7, z2, frame):
    for seed in range(10):
        v = sample_frame_position(oct7, frame, z2, seed=seed)
        counts = lambda_face_counts(oct7, frame, v, z2)
        assert any(n for _, _, n in counts)
        assert sum(c * n for _, c, n in counts) == 0


def _facet_frames(P):
    dirs = sorted({f.normal for f in P.facets})
    yield from ([n] for n in dirs)
    yield from ([a, b] for a, b in itertools.permutations(dirs, 2) if Q.dot(a, b) == 0)


@pytest.mark.parametrize("name", ["square", "cube", "hexprism", "oct7", "oct14", "box2"])
def test_signed_volume_vanishes_for_tilers(name):
    P = fixture(name).polytope()
    for frame in _facet_frames(P):
        assert signed_volume(apply_frame(P, frame)) == 0, frame


@given(st.sampled_from(["oct7", "oct14", "hexprism"]), st.data())
def test_reversing_a_direction_negates(name, data):
    P = fixture(name).polytope()
    n = data.draw(st.sampled_from([f.normal for f in P.facets]))
    a = apply_frame(P, [n]).as_dict()
    b = apply_frame(P, [Q.neg(n)]).as_dict()
    assert a == {k: -c for k, c in b.items()}
