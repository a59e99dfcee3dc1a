"""Bundled polytopes with their known tiling data.

Each fixture is paired with the integer lattice of its dimension.  ``k`` is
the multiplicity of that tiling (None if the translates do not tile), ``N``
and ``k_rational`` are what :func:`ktiling.tiling.compute_k_rational`
should return (None when the symmetry check fails).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .io import dump, multiset_to_json, polytope_to_json
from .lattice import TranslationMultiset
from .polytope import RationalPolytope, build_polytope

h = Fraction(1, 2)


@dataclass(frozen=True)
class Fixture:
    name: str
    vertices: tuple
    symmetry: str
    k: int | None
    N: int | None
    k_rational: int | None
    volume: Fraction

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def multiset_name(self) -> str:
        return f"z{self.dim}"

    @property
    def tiles(self) -> bool:
        return self.k is not None

    def polytope(self) -> RationalPolytope:
        return _build(self.vertices)

    def multiset(self) -> TranslationMultiset:
        return TranslationMultiset.integer_lattice(self.dim)

    def expected(self) -> dict:
        return {
            "symmetry": self.symmetry,
            "k": self.k,
            "N": self.N,
            "kRational": self.k_rational,
            "volume": str(self.volume),
            "tiling": "Verified" if self.tiles else "Refuted",
        }


@lru_cache(maxsize=None)
def _build(vertices: tuple) -> RationalPolytope:
    return build_polytope(vertices)


def _box(side: int, d: int) -> tuple:
    return tuple(itertools.product((0, side), repeat=d))


def _cross(d: int) -> tuple:
    out = []
    for i in range(d):
        for s in (1, -1):
            out.append(tuple(s if j == i else 0 for j in range(d)))
    return tuple(out)


def _octagon(a, b) -> tuple:
    return ((a, b), (b, a), (-b, a), (-a, b), (-a, -b), (-b, -a), (b, -a), (a, -b))


def _cell24() -> tuple:
    out = []
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [0, 0, 0, 0]
            v[i], v[j] = si, sj
            out.append(tuple(v))
    return tuple(sorted(out))


_HEXAGON = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

FIXTURES: tuple[Fixture, ...] = (
    Fixture("square", _box(1, 2), "Pass", 1, 1, 1, Fraction(1)),
    Fixture("box2", _box(2, 3), "Pass", 8, 1, 8, Fraction(8)),
    Fixture("triangle", ((0, 0), (1, 0), (0, 1)), "FailBody", None, None, None, h),
    Fixture("simplex3", ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)), "FailBody", None, None, None, Fraction(1, 6)),
    Fixture("cube", _box(1, 3), "Pass", 1, 1, 1, Fraction(1)),
    Fixture("octahedron", _cross(3), "FailFacet", None, None, None, Fraction(4, 3)),
    Fixture("hexprism", tuple((x, y, z) for z in (0, 1) for x, y in _HEXAGON), "Pass", 3, 1, 3, Fraction(3)),
    Fixture("oct7", _octagon(3 * h, h), "Pass", 7, 2, 28, Fraction(7)),
    Fixture("oct14", _octagon(2, 1), "Pass", 14, 1, 14, Fraction(14)),
    Fixture("cell24", _cell24(), "Pass", 8, 1, 8, Fraction(8)),
)


def fixture(name: str) -> Fixture:
    for f in FIXTURES:
        if f.name == name:
            return f
    raise KeyError(name)


def emit(directory) -> list[str]:
    """Write every fixture, the lattices and an index to ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for d in (2, 3, 4):
        path = out / f"z{d}.json"
        path.write_text(dump(multiset_to_json(TranslationMultiset.integer_lattice(d))))
        written.append(path.name)
    index = []
    for f in FIXTURES:
        path = out / f"{f.name}.json"
        path.write_text(dump(polytope_to_json(f.polytope())))
        written.append(path.name)
        index.append(
            {"name": f.name, "polytope": path.name, "multiset": f"{f.multiset_name}.json", "expected": f.expected()}
        )
    (out / "index.json").write_text(dump({"fixtures": index}))
    written.append("index.json")
    return written
