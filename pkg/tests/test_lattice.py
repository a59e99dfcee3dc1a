from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktiling import rational as Q
from ktiling.errors import InputError
from ktiling.lattice import LatticeComponent, TranslationMultiset


def test_scaled_lattice_points():
    L = TranslationMultiset.scaled_lattice(2, 2)
    pts = [p for p, _ in L.points_in_box((0, 0), (1, 1))]
    assert len(pts) == 9


def test_skew_component_matches_brute_force():
    comp = LatticeComponent(((1, 1), (0, 2)), (F(1, 3), 0), 2)
    got = sorted(comp.points_in_box((-2, -2), (3, 3)))
    want = sorted(
        p
        for z in itertools.product(range(-10, 11), repeat=2)
        for p in [Q.add(Q.matvec(comp.basis, z), comp.offset)]
        if all(-2 <= x <= 3 for x in p)
    )
    assert got == want


def test_period_of_union():
    a = LatticeComponent(((1, 0), (0, 1)), (0, 0))
    b = LatticeComponent(((2, 0), (0, F(1, 2))), (F(1, 2), 0))
    L = TranslationMultiset([a, b])
    m = L.period_basis
    assert abs(Q.det(m)) == 2
    for col in Q.transpose(m):
        for c in (a, b):
            assert all(x.denominator == 1 for x in Q.matvec(c.inverse, col))


@given(st.tuples(st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7)))
def test_reduce_lands_in_cell_and_preserves_class(v):
    L = TranslationMultiset([LatticeComponent(((2, 1), (0, 3)), (0, 0))])
    r = L.reduce(v)
    u = Q.matvec(L.period_inverse, r)
    assert all(0 <= x < 1 for x in u)
    diff = Q.matvec(L.period_inverse, Q.sub(v, r))
    assert all(x.denominator == 1 for x in diff)


def test_multiplicity_reported():
    L = TranslationMultiset([LatticeComponent(((1, 0), (0, 1)), (0, 0), 3)])
    assert {m for _, m in L.points_in_box((0, 0), (1, 1))} == {3}


@pytest.mark.parametrize(
    "basis,offset,mult",
    [(((1, 0), (2, 0)), (0, 0), 1), (((1, 0),), (0, 0), 1), (((1, 0), (0, 1)), (0, 0), 0), (((1, 0), (0, 1)), (0.5, 0), 1)],
)
def test_bad_components(basis, offset, mult):
    with pytest.raises(InputError):
        LatticeComponent(basis, offset, mult)


def test_empty_multiset():
    with pytest.raises(InputError):
        TranslationMultiset([])
