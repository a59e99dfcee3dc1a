"""Translation multisets: finite unions of translated lattices with multiplicities."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from . import rational as Q
from .errors import InputError


@dataclass(frozen=True)
class LatticeComponent:
    """``multiplicity`` copies of ``basis @ Z^d + offset`` (basis columns generate)."""

    basis: tuple
    offset: tuple
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(Q.to_vector(r, "basis") for r in self.basis))
        object.__setattr__(self, "offset", Q.to_vector(self.offset, "offset"))
        d = len(self.basis)
        if any(len(row) != d for row in self.basis) or len(self.offset) != d:
            raise InputError("lattice basis must be square and match the offset length")
        if Q.det(self.basis) == 0:
            raise InputError("lattice basis is singular")
        if not isinstance(self.multiplicity, int) or self.multiplicity < 1:
            raise InputError("multiplicity must be a positive integer")

    @cached_property
    def inverse(self):
        return Q.inverse(self.basis)

    def points_in_box(self, lo: Sequence, hi: Sequence) -> Iterator[tuple]:
        """Lattice points of this component inside the closed box [lo, hi]."""
        d = len(lo)
        images = [
            Q.matvec(self.inverse, Q.sub(corner, self.offset))
            for corner in itertools.product(*zip(lo, hi))
        ]
        ranges = [
            range(math.floor(min(im[i] for im in images)), math.ceil(max(im[i] for im in images)) + 1)
            for i in range(d)
        ]
        diagonal = all(self.basis[i][j] == 0 for i in range(d) for j in range(d) if i != j)
        for z in itertools.product(*ranges):
            if diagonal:
                p = tuple(self.basis[i][i] * z[i] + self.offset[i] for i in range(d))
            else:
                p = Q.add(Q.matvec(self.basis, z), self.offset)
            if all(lo[i] <= p[i] <= hi[i] for i in range(d)):
                yield p


class TranslationMultiset:
    """Periodic multiset Lambda = union of multiplicity * (B Z^d + offset)."""

    def __init__(self, components: Sequence[LatticeComponent]):
        if not components:
            raise InputError("a translation multiset needs at least one component")
        self.components = tuple(components)
        self.dim = len(components[0].offset)
        if any(len(c.offset) != self.dim for c in self.components):
            raise InputError("components have different dimensions")

    @classmethod
    def integer_lattice(cls, d: int) -> "TranslationMultiset":
        return cls.scaled_lattice(d, 1)

    @classmethod
    def scaled_lattice(cls, d: int, n: int) -> "TranslationMultiset":
        """The lattice (1/n) Z^d."""
        basis = tuple(
            tuple(Fraction(1, n) if i == j else Fraction(0) for j in range(d)) for i in range(d)
        )
        return cls([LatticeComponent(basis, tuple(Fraction(0) for _ in range(d)))])

    def __repr__(self):
        return f"TranslationMultiset(dim={self.dim}, components={len(self.components)})"

    @cached_property
    def period_basis(self) -> tuple:
        """Column basis of the coarsest lattice common to all components."""
        return Q.lattice_intersection([c.basis for c in self.components])

    @cached_property
    def period_inverse(self) -> tuple:
        return Q.inverse(self.period_basis)

    def reduce(self, v: Sequence) -> tuple:
        """Representative of v modulo the period lattice, in its fundamental cell."""
        u = Q.matvec(self.period_inverse, v)
        frac = tuple(x - math.floor(x) for x in u)
        return Q.matvec(self.period_basis, frac)

    def points_in_box(self, lo: Sequence, hi: Sequence) -> Iterator[tuple[tuple, int]]:
        """(point, multiplicity) for each component point in the closed box."""
        for comp in self.components:
            for p in comp.points_in_box(lo, hi):
                yield p, comp.multiplicity
