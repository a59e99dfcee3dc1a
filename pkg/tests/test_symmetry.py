from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktiling.errors import EmptyInput
from ktiling.fixtures import FIXTURES
from ktiling.symmetry import minkowski_verdict, symmetry_center


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_fixture_verdicts(fx):
    assert minkowski_verdict(fx.polytope()).overall == fx.symmetry


def test_octahedron_fails_every_facet():
    v = minkowski_verdict(next(f for f in FIXTURES if f.name == "octahedron").polytope())
    assert v.body_symmetric
    assert len(v.failed_facets) == 8


def test_body_failure_reported_first():
    v = minkowski_verdict(next(f for f in FIXTURES if f.name == "simplex3").polytope())
    assert v.overall == "FailBody"
    assert v.to_json()["bodyCenter"] is None


def test_center_of_oct7(oct7):
    assert symmetry_center(oct7.vertices) == (0, 0)


def test_empty():
    with pytest.raises(EmptyInput):
        symmetry_center([])


pts = st.lists(
    st.tuples(st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3)),
    min_size=1,
    max_size=6,
    unique=True,
)


@given(pts, st.tuples(st.fractions(-2, 2, max_denominator=5), st.fractions(-2, 2, max_denominator=5)))
def test_symmetrized_sets_have_the_chosen_center(points, c):
    sym = set(points) | {(2 * c[0] - x, 2 * c[1] - y) for x, y in points}
    assert symmetry_center(sorted(sym)) == c


@given(pts)
def test_center_reflects_set_onto_itself(points):
    c = symmetry_center(points)
    if c is not None:
        assert {(2 * c[0] - x, 2 * c[1] - y) for x, y in points} == set(points)


def test_single_point_is_its_own_center():
    assert symmetry_center([(F(1, 2), 3)]) == (F(1, 2), 3)
