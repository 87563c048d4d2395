"""Command-line front end: ``a2bc <subcommand> ...``.

Exit status is 0 on success, 1 when a verification check fails (the check
is named on stderr) and 2 for usage errors or out-of-range parameters.
Negative coordinate lists need the ``=`` form, e.g. ``--d=-0.3,-1,-0.5``.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import generators as gen
from .avc import AvcConstraints, enumerate_types
from .combinatorics import census, verify
from .errors import MalformedTilingError, TilingError
from .io_export import from_json, render_svg, to_json
from .moduli import classify_two_layer, subdivision_moduli
from .quad_solver import (
    ANGLE_NAMES,
    EDGE_NAMES,
    AngleQuad,
    TwoLayerConstruction,
    closure_residual,
    solve_subdivision,
    solve_three_layer,
    solve_two_layer,
)
from .sphere_geom import SpherePoint

FAMILIES = ("two-layer", "three-layer", "three-layer-flip1", "three-layer-flip2",
            "subdivision", "subdivision-flip")


class UsageError(Exception):
    pass


def _number(text: str, units: str) -> float:
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc
    return value * math.pi if units == "pi" else value


def _point(text: str, units: str) -> SpherePoint:
    """x,y,z (normalised) or lon,lat in the chosen angle units."""
    parts = [p for p in text.split(",") if p.strip()]
    try:
        if len(parts) == 3:
            return SpherePoint(*(float(p) for p in parts))
        if len(parts) == 2:
            return SpherePoint.from_lonlat(*(_number(p, units) for p in parts))
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc
    raise UsageError(f"points are x,y,z or lon,lat, got {text!r}")


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required here")
    return value


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(args, data: bytes) -> None:
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _load(path: str):
    try:
        return from_json(_read(path))
    except OSError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    if args.family == "three-layer":
        g = solve_three_layer(_need(args, "n"))
    elif args.family == "subdivision":
        g = solve_subdivision(_number(_need(args, "b"), args.units))
    else:
        g = solve_two_layer(TwoLayerConstruction(_need(args, "n"), _point(_need(args, "d"), args.units)))
    scale, unit = (math.pi, "/pi") if args.units == "pi" else (1.0, "")
    lines = [f"{k}{unit} = {v / scale:.4f}" for k, v in zip(EDGE_NAMES, g.edges)]
    lines += [f"{k}{unit} = {v / scale:.4f}" for k, v in zip(ANGLE_NAMES, g.angles)]
    lines.append(f"closure residual = {closure_residual(g):.3e}")
    lines += [f"note: {n}" for n in g.notes]
    print("\n".join(lines))
    return 0


def build_family(args):
    fam = args.family
    if fam == "two-layer":
        return gen.gen_two_layer(_need(args, "n"), _point(_need(args, "d"), args.units))
    if fam == "three-layer":
        return gen.gen_three_layer(_need(args, "n"))
    if fam == "three-layer-flip1":
        return gen.gen_three_layer_flip1(_need(args, "m"))
    if fam == "three-layer-flip2":
        return gen.gen_three_layer_flip2(_need(args, "m"))
    if fam == "subdivision":
        return gen.gen_subdivision(_number(_need(args, "b"), args.units))
    return gen.gen_subdivision_flip()


def cmd_generate(args) -> int:
    t = build_family(args)
    for w in t.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write(args, to_json(t))
    return 0


def cmd_verify(args) -> int:
    try:
        t = _load(args.file)
        rep = verify(t, tol=args.tol)
    except MalformedTilingError as exc:
        print(f"FAIL malformed: {exc}", file=sys.stderr)
        return 1
    for c in rep.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    if not rep.embedded:
        print("note: no coordinates, combinatorial checks only")
    if not rep.ok:
        print("verification failed: " + ", ".join(c.name for c in rep.failed()), file=sys.stderr)
        return 1
    return 0


def cmd_avc(args) -> int:
    if args.table1_f is not None:
        f = args.table1_f
        if f < 16 or f % 2:
            raise UsageError("--table1-f takes an even f >= 16")
        fr = (1 - Fraction(8, f), Fraction(8, f), Fraction(1, 2) + Fraction(4, f), Fraction(1, 2))
        c = AvcConstraints.from_pi_fractions(fr, max_total_degree=args.max_degree)
    else:
        vals = [_need(args, k) for k in ANGLE_NAMES]
        if args.units == "pi":
            try:
                fr = tuple(Fraction(v) for v in vals)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            c = AvcConstraints.from_pi_fractions(fr, tol=args.tol, max_total_degree=args.max_degree)
        else:
            c = AvcConstraints(AngleQuad(*(float(v) for v in vals)), tol=args.tol,
                               max_total_degree=args.max_degree)
    for vt in enumerate_types(c):
        print(vt)
    return 0


def cmd_moduli(args) -> int:
    if args.family == "two-layer":
        r = classify_two_layer(_need(args, "n"), _point(_need(args, "d"), args.units))
        print(r.name)
    else:
        print(subdivision_moduli(_number(_need(args, "b"), args.units), tol=args.tol))
    return 0


def cmd_render(args) -> int:
    t = _load(args.file)
    pole = _point(args.pole, "rad") if args.pole else None
    _write(args, render_svg(t, pole=pole, split_at_infinity=args.split))
    return 0


def cmd_census(args) -> int:
    print(census(_load(args.file)))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--b", help="subdivision parameter (a fraction like 1/8 is fine)")
    common.add_argument("--d", help="free vertex of the 2-layer tile: x,y,z or lon,lat")
    common.add_argument("--units", choices=("rad", "pi"), default="rad",
                        help="read and print angles in radians or as multiples of pi")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="a2bc", description="Tilings of the sphere by congruent a^2bc quadrilaterals.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="print the quadrilateral of a family")
    s.add_argument("family", choices=("two-layer", "three-layer", "subdivision"))
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("generate", parents=[common], help="emit a tiling as JSON")
    s.add_argument("family", choices=FAMILIES)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("verify", parents=[common], help="re-check a JSON tiling")
    s.add_argument("file", help="path or - for stdin")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("avc", parents=[common], help="list vertex types with angle sum 2pi")
    for k in ANGLE_NAMES:
        s.add_argument(f"--{k}")
    s.add_argument("--max-degree", type=int, default=60)
    s.add_argument("--table1-f", type=int, help="use the angles of the alpha^2 beta^2 case with f tiles")
    s.set_defaults(func=cmd_avc, tol=1e-9)

    s = sub.add_parser("moduli", parents=[common], help="classify a parameter point")
    s.add_argument("family", choices=("two-layer", "subdivision"))
    s.set_defaults(func=cmd_moduli, tol=1e-9)

    s = sub.add_parser("render", parents=[common], help="stereographic SVG of a JSON tiling")
    s.add_argument("file")
    s.add_argument("--pole", help="x,y,z of the projection pole")
    s.add_argument("--split", action="store_true", help="split edges through the projection centre")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("census", parents=[common], help="print the vertex census")
    s.add_argument("file")
    s.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"a2bc: error: {exc}", file=sys.stderr)
        return 2
    except MalformedTilingError as exc:
        print(f"a2bc: malformed tiling: {exc}", file=sys.stderr)
        return 1
    except (TilingError, ValueError) as exc:
        print(f"a2bc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
