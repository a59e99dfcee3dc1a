"""JSON formats for polytopes and translation multisets.

Coordinates are fraction strings ("3/2", "-1", "0"); JSON numbers are
accepted only when they are integers, so no float ever reaches the kernel.
Every parse error names the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import rational as Q
from .errors import InputError
from .lattice import LatticeComponent, TranslationMultiset
from .polytope import RationalPolytope, build_polytope


def _require(obj, key: str, kind, where: str):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object")
    if key not in obj:
        raise InputError(f"{where}.{key}: missing")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InputError(f"{where}.{key}: expected {kind.__name__}")
    return value


def _matrix(rows, where: str) -> tuple:
    if not isinstance(rows, list):
        raise InputError(f"{where}: expected a list of rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"{where}[{i}]: expected a list")
        out.append(Q.to_vector(row, f"{where}[{i}]"))
    return tuple(out)


def polytope_from_json(obj) -> RationalPolytope:
    dim = _require(obj, "dim", int, "polytope")
    rows = _matrix(_require(obj, "vertices", list, "polytope"), "polytope.vertices")
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise InputError(f"polytope.vertices[{i}]: has {len(row)} coordinates, dim is {dim}")
    return build_polytope(rows)


def polytope_to_json(P: RationalPolytope) -> dict:
    return {"dim": P.dim, "vertices": [[Q.fraction_str(x) for x in v] for v in P.vertices]}


def multiset_from_json(obj) -> TranslationMultiset:
    comps = _require(obj, "components", list, "multiset")
    out = []
    for i, c in enumerate(comps):
        where = f"multiset.components[{i}]"
        basis = _matrix(_require(c, "basis", list, where), f"{where}.basis")
        offset = Q.to_vector(_require(c, "offset", list, where), f"{where}.offset")
        mult = c.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise InputError(f"{where}.multiplicity: expected a positive integer")
        try:
            out.append(LatticeComponent(basis, offset, mult))
        except InputError as exc:
            raise InputError(f"{where}: {exc}") from None
    try:
        return TranslationMultiset(out)
    except InputError as exc:
        raise InputError(f"multiset.components: {exc}") from None


def multiset_to_json(Lam: TranslationMultiset) -> dict:
    return {
        "components": [
            {
                "basis": [[Q.fraction_str(x) for x in row] for row in c.basis],
                "offset": [Q.fraction_str(x) for x in c.offset],
                "multiplicity": c.multiplicity,
            }
            for c in Lam.components
        ]
    }


def read_json(path) -> tuple[object, bytes]:
    """Parsed JSON and the raw bytes (the bytes are hashed into run manifests)."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(raw), raw
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_polytope(path) -> RationalPolytope:
    return polytope_from_json(read_json(path)[0])


def load_multiset(path) -> TranslationMultiset:
    return multiset_from_json(read_json(path)[0])


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
