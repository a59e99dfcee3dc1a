"""Exact rational vectors, matrices and integer lattices.

Vectors are plain tuples of :class:`fractions.Fraction` (or ``int``);
matrices are tuples of rows.  Nothing in here touches floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import InputError

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

_FRACTION_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def to_fraction(value, where: str = "value") -> Fraction:
    """Parse an exact rational from an int, Fraction or ``"p/q"`` string.

    Floats and decimal strings are rejected so that coordinates never pick up
    binary rounding at the input boundary.
    """
    if isinstance(value, bool):
        raise InputError(f"{where}: booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _FRACTION_RE.match(value):
            raise InputError(f"{where}: {value!r} is not a fraction string like '3/2'")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"{where}: zero denominator in {value!r}") from None
    raise InputError(f"{where}: expected a fraction string, got {type(value).__name__}")


def to_vector(values: Iterable, where: str = "vector") -> Vector:
    return tuple(to_fraction(x, f"{where}[{i}]") for i, x in enumerate(values))


def parse_vector(text: str, where: str = "vector") -> Vector:
    """``"1/2,0,-3"`` -> (1/2, 0, -3)."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise InputError(f"{where}: empty component in {text!r}")
    return to_vector([p.strip() for p in parts], where)


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(s, a: Sequence) -> Vector:
    return tuple(s * x for x in a)


def neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def centroid(points: Sequence[Sequence]) -> Vector:
    n = len(points)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*points))


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def denominator_lcm(vectors: Iterable[Sequence]) -> int:
    return lcm(Fraction(x).denominator for v in vectors for x in v)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(math.gcd, (abs(int(x)) for x in v), 0)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def primitive_direction(v: Sequence) -> tuple[int, ...]:
    """Clear denominators of a rational vector and reduce to coprime integers."""
    den = lcm(Fraction(x).denominator for x in v)
    return primitive([Fraction(x) * den for x in v])


# -- integer determinants ---------------------------------------------------


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def normal_of(vectors: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generalized cross product of d-1 integer vectors in Z^d.

    Returns the zero vector when the inputs are linearly dependent.
    """
    d = len(vectors) + 1
    out = []
    for i in range(d):
        minor = [[row[j] for j in range(d) if j != i] for row in vectors]
        out.append((-1) ** i * int_det(minor))
    return tuple(out)


# -- rational elimination ---------------------------------------------------


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def rank(rows: Sequence[Sequence]) -> int:
    return len(independent_rows(rows))


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a greedy maximal linearly independent subset of ``rows``."""
    echelon: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for pivot, e in echelon:
            if r[pivot] != 0:
                f = r[pivot] / e[pivot]
                r = [x - f * y for x, y in zip(r, e)]
        pivot = next((j for j, x in enumerate(r) if x != 0), None)
        if pivot is not None:
            echelon.append((pivot, r))
            chosen.append(idx)
    return chosen


def solve(m: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square nonsingular system ``m x = b`` exactly."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(a[r][n] for r in range(n))


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(col) for col in zip(*m))


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    cols = [solve(m, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def project_onto_span(v: Sequence, basis: Sequence[Sequence]) -> Vector:
    """Orthogonal projection of ``v`` onto span(basis); basis rows independent."""
    if not basis:
        return tuple(Fraction(0) for _ in v)
    gram = [[dot(a, b) for b in basis] for a in basis]
    coeffs = solve(gram, [dot(a, v) for a in basis])
    out = [Fraction(0)] * len(v)
    for c, b in zip(coeffs, basis):
        out = [o + c * x for o, x in zip(out, b)]
    return tuple(out)


def gram_det(basis: Sequence[Sequence]) -> Fraction:
    return det([[dot(a, b) for b in basis] for a in basis])


# -- integer lattices -------------------------------------------------------


def integer_row_basis(generators: Iterable[Sequence[int]], d: int) -> list[list[int]]:
    """Echelon basis of the lattice generated by integer row vectors."""
    rows = [list(map(int, g)) for g in generators]
    basis = []
    for c in range(d):
        active = [r for r in rows if r[c] != 0]
        rows = [r for r in rows if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            rest = []
            for r in active[1:]:
                q = r[c] // p[c]
                r2 = [x - q * y for x, y in zip(r, p)]
                (rest if r2[c] != 0 else rows).append(r2)
            active = [p] + rest
        if active:
            basis.append(active[0])
    return basis


def rational_lattice_basis(generators: Sequence[Sequence], d: int) -> Matrix:
    """Basis (as rows) of the lattice generated by rational row vectors."""
    den = denominator_lcm(generators)
    ints = [[int(Fraction(x) * den) for x in g] for g in generators]
    rows = integer_row_basis(ints, d)
    if len(rows) != d:
        raise InputError("generators do not span a full-rank lattice")
    return tuple(tuple(Fraction(x, den) for x in r) for r in rows)


def lattice_intersection(bases: Sequence[Sequence[Sequence]]) -> Matrix:
    """Column basis of the intersection of lattices ``B_i Z^d``.

    Uses duality: the intersection is the dual of the sum of dual lattices,
    and the dual of ``B Z^d`` is ``B^{-T} Z^d``.
    """
    d = len(bases[0])
    dual_gens = []
    for b in bases:
        dual_gens.extend(inverse(b))  # rows of B^{-1} = columns of B^{-T}
    s = transpose(rational_lattice_basis(dual_gens, d))  # columns generate the sum
    return transpose(inverse(s))


def orthogonal_complement(rows: Sequence[Sequence], d: int) -> Matrix:
    """Rational basis of the vectors orthogonal to every row (the null space)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * d
        v[fcol] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[fcol]
        basis.append(tuple(v))
    return tuple(basis)
