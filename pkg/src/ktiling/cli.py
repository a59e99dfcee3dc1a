"""Command-line entry point: ``ktiling <command> ...``.

Every command prints one JSON document to stdout with a run manifest.  Exit
codes: 0 when the check passes, 1 when it fails mathematically (or a
numerical budget runs out), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import rational as Q
from .boundary import Frame, apply_frame, lambda_face_counts, sample_frame_position, signed_volume
from .errors import InputError, KTilingError, SymmetryPreconditionFailed
from .fixtures import FIXTURES, emit
from .fourier import hat_indicator, hat_quadrature
from .io import dump, multiset_from_json, polytope_from_json, read_json
from .polytope import volume
from .solid_angle import solid_angle_sum
from .symmetry import minkowski_verdict
from .tiling import compute_k_rational, verify_k_tiling_exact_2d, verify_k_tiling_sampled

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunManifest:
    command: str
    inputs: dict = field(default_factory=dict)  # file name -> sha256 of its bytes
    seed: object = None
    version: str = __version__
    # wall time goes to stderr so that stdout stays byte-identical across runs
    timing: None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "version": self.version,
            "timing": self.timing,
        }


class _Inputs:
    def __init__(self, manifest: RunManifest):
        self.manifest = manifest

    def _read(self, path):
        obj, raw = read_json(path)
        self.manifest.inputs[Path(path).name] = hashlib.sha256(raw).hexdigest()
        return obj

    def polytope(self, path):
        return polytope_from_json(self._read(path))

    def multiset(self, path):
        return multiset_from_json(self._read(path))


def _vec(text: str, where: str, dim: int) -> tuple:
    v = Q.parse_vector(text, where)
    if len(v) != dim:
        raise InputError(f"{where}: expected {dim} coordinates, got {len(v)}")
    return v


def _strs(v) -> list[str]:
    return [Q.fraction_str(x) for x in v]


# -- commands ---------------------------------------------------------------


def cmd_check_symmetry(args, inputs):
    verdict = minkowski_verdict(inputs.polytope(args.polytope))
    return verdict.to_json(), verdict.passed


def cmd_compute_k(args, inputs):
    P = inputs.polytope(args.polytope)
    inputs.manifest.seed = args.seed
    try:
        n, k = compute_k_rational(P, samples=args.samples, seed=args.seed)
    except SymmetryPreconditionFailed as exc:
        return {"error": str(exc), "symmetry": minkowski_verdict(P).overall}, False
    return {"N": n, "k": k, "volume": Q.fraction_str(volume(P))}, True


def cmd_verify(args, inputs):
    P = inputs.polytope(args.polytope)
    Lam = inputs.multiset(args.lattice)
    if Lam.dim != P.dim:
        raise InputError("lambda: dimension does not match the polytope")
    if args.exact_2d:
        report = verify_k_tiling_exact_2d(P, Lam)
    else:
        inputs.manifest.seed = args.seed
        report = verify_k_tiling_sampled(P, Lam, trials=args.trials, seed=args.seed)
    if args.svg:
        if P.dim != 2:
            raise InputError("svg: only planar polytopes can be drawn")
        Path(args.svg).write_text(render_svg(P, Lam))
    return report.to_json(), report.ok


def _default_frames(P):
    """Every facet-normal direction (up to sign), and every orthogonal pair of them."""
    dirs = []
    for f in P.facets:
        n = Q.primitive_direction(f.normal)
        if next(x for x in n if x) < 0:
            n = tuple(-x for x in n)
        if n not in dirs:
            dirs.append(n)
    frames = [Frame((n,)) for n in dirs]
    frames += [Frame((a, b)) for a, b in itertools.permutations(dirs, 2) if Q.dot(a, b) == 0]
    return frames


def cmd_boundary_check(args, inputs):
    P = inputs.polytope(args.polytope)
    Lam = inputs.multiset(args.lattice)
    if Lam.dim != P.dim:
        raise InputError("lambda: dimension does not match the polytope")
    inputs.manifest.seed = args.seed
    frames = [Frame.parse(text) for text in args.frame] if args.frame else _default_frames(P)
    for i, fr in enumerate(frames):
        if any(len(n) != P.dim for n in fr.directions):
            raise InputError(f"frame[{i}]: direction length does not match the polytope")
    results = []
    ok = True
    for fi, fr in enumerate(frames):
        s = apply_frame(P, fr)
        vol = signed_volume(s)
        samples = []
        for t in range(args.trials):
            v = sample_frame_position(P, fr, Lam, seed=f"{args.seed}/{fi}/{t}")
            counts = lambda_face_counts(P, fr, v, Lam)
            samples.append({"v": _strs(v), "sum": sum(c * n for _, c, n in counts)})
        sums = [x["sum"] for x in samples]
        ok = ok and vol == 0 and not any(sums)
        results.append(
            {
                "frame": fr.to_json(),
                "terms": s.to_json(),
                "signedVolume": Q.fraction_str(vol),
                "samples": samples,
                "nonzeroSums": sum(1 for x in sums if x),
            }
        )
    return {"frames": results, "allZero": ok}, ok


def cmd_angle_sum(args, inputs):
    P = inputs.polytope(args.polytope)
    Lam = inputs.multiset(args.lattice)
    if Lam.dim != P.dim:
        raise InputError("lambda: dimension does not match the polytope")
    return solid_angle_sum(P, Lam, _vec(args.v, "v", P.dim)).to_json(), True


def cmd_fourier(args, inputs):
    P = inputs.polytope(args.polytope)
    xi = _vec(args.xi, "xi", P.dim)
    value = hat_indicator(P, xi)
    out = value.to_json()
    ok = True
    if args.oracle:
        check = hat_quadrature(P, xi, args.tol)
        gap = abs(value.value - check.value)
        ok = gap <= value.error_bound + check.error_bound
        out["oracle"] = {**check.to_json(), "difference": gap, "agrees": ok}
    return out, ok


def cmd_fixtures(args, inputs):
    listing = [{"name": f.name, "dim": f.dim, "multiset": f.multiset_name, "expected": f.expected()} for f in FIXTURES]
    out = {"fixtures": listing}
    if args.emit:
        out["written"] = emit(args.emit)
    return out, True


# -- svg --------------------------------------------------------------------


def render_svg(P, Lam, size: int = 480) -> str:
    """Outlines of every translate P + lambda meeting one period window."""
    m = Lam.period_basis
    corners = [Q.matvec(m, c) for c in itertools.product((0, 1), repeat=2)]
    lo = [min(float(c[i]) for c in corners) for i in range(2)]
    hi = [max(float(c[i]) for c in corners) for i in range(2)]
    plo, phi = P.bounding_box()
    margin = max(float(phi[i] - plo[i]) for i in range(2))
    x0, y0 = lo[0] - margin, lo[1] - margin
    span = max(hi[0] - lo[0], hi[1] - lo[1]) + 2 * margin
    s = size / span

    def xy(p):
        return f"{(float(p[0]) - x0) * s:.3f},{size - (float(p[1]) - y0) * s:.3f}"

    ring = _ring(P)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    window = [corners[0], corners[1], corners[3], corners[2]]
    parts.append(f'<polygon points="{" ".join(xy(p) for p in window)}" fill="#eef" stroke="#88a"/>')
    box_lo = tuple(math.floor(v) for v in (x0, y0))
    box_hi = tuple(math.ceil(v + span) for v in (x0, y0))
    for lam, _ in Lam.points_in_box(Q.sub(box_lo, phi), Q.sub(box_hi, plo)):
        pts = " ".join(xy(Q.add(p, lam)) for p in ring)
        parts.append(f'<polygon points="{pts}" fill="none" stroke="#333" stroke-width="0.8"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _ring(P) -> list:
    """Polygon vertices in counterclockwise order."""
    c = Q.centroid(P.vertices)
    return sorted(P.vertices, key=lambda p: math.atan2(float(p[1] - c[1]), float(p[0] - c[0])))


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ktiling", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-symmetry", help="central symmetry of P and its facets")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_check_symmetry)

    p = sub.add_parser("compute-k", help="N and k for the (1/N)Z^d tiling of a rational polytope")
    p.add_argument("polytope")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compute_k)

    p = sub.add_parser("verify", help="check that P k-tiles with a translation multiset")
    p.add_argument("polytope")
    p.add_argument("--lambda", dest="lattice", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--exact-2d", action="store_true")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("boundary-check", help="signed volume and lattice sums of iterated boundaries")
    p.add_argument("polytope")
    p.add_argument("--lambda", dest="lattice", required=True)
    p.add_argument("--frame", action="append", help='e.g. "1,0;0,1"; repeatable; default: facet normals')
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_boundary_check)

    p = sub.add_parser("angle-sum", help="sum of solid angles of P + v at the points of Lambda")
    p.add_argument("polytope")
    p.add_argument("--lambda", dest="lattice", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_angle_sum)

    p = sub.add_parser("fourier", help="Fourier transform of the indicator of P")
    p.add_argument("polytope")
    p.add_argument("--xi", required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("fixtures", help="list (and optionally write) the bundled fixtures")
    p.add_argument("--emit")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    manifest = RunManifest(args.command)
    start = time.perf_counter()
    try:
        result, ok = args.func(args, _Inputs(manifest))
        code = EXIT_PASS if ok else EXIT_FAIL
    except InputError as exc:
        print(f"ktiling: input error: {exc}", file=sys.stderr)
        result, code = {"error": {"kind": type(exc).__name__, "message": str(exc)}}, EXIT_INPUT
    except KTilingError as exc:
        print(f"ktiling: {exc}", file=sys.stderr)
        result, code = {"error": {"kind": type(exc).__name__, "message": str(exc)}}, EXIT_FAIL
    sys.stdout.write(dump({"manifest": manifest.to_json(), "result": result, "exitCode": code}))
    print(f"ktiling: {args.command} finished in {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
