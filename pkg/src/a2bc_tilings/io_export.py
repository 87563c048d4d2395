"""JSON documents for tilings and stereographic SVG drawings.

Document layout (``schema_version`` "1")::

    {
      "schema_version": "1",
      "family": {"tag": ..., "n"/"m"/"b"/"D": ...},
      "f": int,
      "geometry": {"angles": {...}, "angles_over_pi": {...},
                   "edges": {...}, "edges_over_pi": {...},
                   "diagonal_x": float, "sub_angles": [A, B, C] or null, "notes": [...]},
      "census": [{"type": "ac^2", "multiplicity": 12}, ...],
      "census_string": "T(12 ac^2, ...)",
      "tiles": [{"corners": [["alpha", 0], ...], "sides": ["a", "b", "c", "a"]}, ...],
      "vertices": [{"id": 0, "xyz": [x, y, z]}, ...],     # only when embedded
      "verification": {"ok": true, "mode": "embedded", "checks": {...}},
      "warnings": [...]
    }

Keys are sorted and floats are written with ``repr``, the shortest text that
reads back to the identical double.
"""

from __future__ import annotations

import json
import math
from xml.sax.saxutils import quoteattr

import numpy as np

from .combinatorics import Corner, FamilyId, Tile, Tiling, census, verify
from .errors import MalformedTilingError, PointAtInfinityError, RenderError, UnverifiedTilingError
from .quad_solver import ANGLE_NAMES, EDGE_NAMES, AngleQuad, EdgeTriple, QuadGeometry
from .sphere_geom import NORTH, GreatArc, angular_distance, as_vec, normalize, stereo_project

SCHEMA_VERSION = "1"


def _geometry_doc(g: QuadGeometry) -> dict:
    return {
        "angles": dict(zip(ANGLE_NAMES, g.angles)),
        "angles_over_pi": {k: v / math.pi for k, v in zip(ANGLE_NAMES, g.angles)},
        "edges": dict(zip(EDGE_NAMES, g.edges)),
        "edges_over_pi": {k: v / math.pi for k, v in zip(EDGE_NAMES, g.edges)},
        "diagonal_x": g.diagonal_x,
        "sub_angles": list(g.sub_angles) if g.sub_angles is not None else None,
        "notes": list(g.notes),
    }


def _geometry_from_doc(d: dict) -> QuadGeometry:
    return QuadGeometry(
        AngleQuad(*(d["angles"][k] for k in ANGLE_NAMES)),
        EdgeTriple(*(d["edges"][k] for k in EDGE_NAMES)),
        d["diagonal_x"],
        tuple(d["sub_angles"]) if d.get("sub_angles") is not None else None,
        tuple(d.get("notes", ())),
    )


def to_document(t: Tiling) -> dict:
    rep = verify(t)
    if not rep.ok:
        raise UnverifiedTilingError(
            "refusing to serialise a tiling that fails: " + ", ".join(c.name for c in rep.failed()))
    c = census(t)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": t.family.as_dict(),
        "f": t.f,
        "census": [{"type": str(vt), "multiplicity": mult} for vt, mult in c.ordered()],
        "census_string": str(c),
        "tiles": [{"corners": [[cr.angle, cr.vertex] for cr in tile.corners], "sides": list(tile.sides)}
                  for tile in t.tiles],
        "verification": rep.summary(),
        "warnings": list(t.warnings),
    }
    if t.geometry is not None:
        doc["geometry"] = _geometry_doc(t.geometry)
    if t.positions is not None:
        doc["vertices"] = [{"id": v, "xyz": list(t.positions[v])} for v in sorted(t.positions)]
    return doc


def to_json(t: Tiling) -> bytes:
    return (json.dumps(to_document(t), sort_keys=True, indent=1) + "\n").encode()


def from_document(doc: dict) -> Tiling:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise MalformedTilingError(f"unsupported schema_version {doc.get('schema_version')!r}")
    try:
        tiles = tuple(
            Tile(tuple(Corner(a, int(v)) for a, v in td["corners"]), tuple(td["sides"]))
            for td in doc["tiles"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedTilingError(f"bad tile record: {exc}") from exc
    positions = None
    if "vertices" in doc:
        positions = {int(r["id"]): tuple(float(x) for x in r["xyz"]) for r in doc["vertices"]}
    geometry = _geometry_from_doc(doc["geometry"]) if "geometry" in doc else None
    return Tiling(tiles, positions=positions, geometry=geometry,
                  family=FamilyId.from_dict(doc["family"]), warnings=tuple(doc.get("warnings", ())))


def from_json(data: bytes | str) -> Tiling:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedTilingError(f"not a JSON document: {exc}") from exc
    return from_document(doc)


# -------------------------------------------------------------------- SVG

EDGE_STYLE = {
    "a": 'stroke="#000" stroke-width="0.008"',
    "b": 'stroke="#000" stroke-width="0.028"',
    "c": 'stroke="#000" stroke-width="0.008" stroke-dasharray="0.04 0.025"',
}
FACE_FILL = "#e8eef7"
CENTRE_TOL = 1e-6


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _xy(p, pole) -> tuple[float, float]:
    u, v = stereo_project(p, pole)
    return u, -v  # SVG's y axis points down


def _edge_arc(t: Tiling, ti: int, s: int) -> GreatArc:
    u, w = (t.position(v) for v in t.half_edge(ti, s))
    L = t.geometry.edges[t.tiles[ti].sides[s]] if t.geometry is not None else angular_distance(u, w)
    axis = np.cross(u, w)
    if L > math.pi:
        axis = -axis
    return GreatArc(u, axis, L)


def _centre_parameter(arc: GreatArc, centre: np.ndarray) -> float | None:
    """Arc parameter where the arc passes within CENTRE_TOL of the projection centre."""
    proj = centre - np.dot(centre, arc.axis) * arc.axis
    if np.linalg.norm(proj) < 1e-12:
        return None
    x = normalize(proj)
    u = arc.parameter_of(x)
    if u is None or u > arc.length or angular_distance(x, centre) > CENTRE_TOL:
        return None
    return u


def _arc_segment(arc: GreatArc, t0: float, t1: float, pole) -> str:
    """SVG path data for the projected piece of arc between parameters t0 and t1."""
    p0, p1, p2 = (np.array(_xy(arc.point(x), pole)) for x in (t0, (t0 + t1) / 2, t1))
    start = f"M {_fmt(p0[0])} {_fmt(p0[1])}"
    d1, d2 = p1 - p0, p2 - p1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    chord = np.linalg.norm(p2 - p0)
    # curvature of the circle through the three points: 2 sin(angle) / chord
    denom = np.linalg.norm(d1) * np.linalg.norm(d2) * chord
    curvature = 2.0 * abs(cross) / denom if denom > 0 else 0.0
    if curvature < 1e-4:
        return f"{start} L {_fmt(p2[0])} {_fmt(p2[1])}"
    r = 1.0 / curvature
    # circumcentre; the arc is the long way round when it lies on p1's side of the chord
    a2, b2 = np.dot(d1, d1), np.dot(p2 - p0, p2 - p0)
    e = p2 - p0
    det = 2.0 * (d1[0] * e[1] - d1[1] * e[0])
    centre = p0 + np.array([e[1] * a2 - d1[1] * b2, d1[0] * b2 - e[0] * a2]) / det
    side_p1 = e[0] * (p1 - p0)[1] - e[1] * (p1 - p0)[0]
    side_c = e[0] * (centre - p0)[1] - e[1] * (centre - p0)[0]
    large = 1 if side_p1 * side_c > 0 else 0
    sweep = 1 if cross > 0 else 0
    return f"{start} A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(p2[0])} {_fmt(p2[1])}"


def default_pole(t: Tiling) -> np.ndarray:
    """North pole, unless its antipode touches the tiling; then the centre of tile 0."""
    centre = -as_vec(NORTH)
    near_vertex = any(np.linalg.norm(t.position(v) - centre) < CENTRE_TOL for v in t.vertices)
    near_edge = any(_centre_parameter(_edge_arc(t, *h), centre) is not None for h, _, _ in t.edges)
    if not (near_vertex or near_edge):
        return as_vec(NORTH)
    return normalize(sum(t.position(c.vertex) for c in t.tiles[0].corners))


def render_svg(t: Tiling, pole=None, split_at_infinity: bool = False) -> bytes:
    """Stereographic drawing: one path per edge, one group per tile.

    Edges are styled by label: a thin, b thick, c dashed.  An edge through
    the projection centre is split in two when ``split_at_infinity`` is set
    and raises :class:`RenderError` otherwise.
    """
    if t.positions is None:
        raise RenderError("render_svg needs an embedded tiling")
    pole = default_pole(t) if pole is None else as_vec(pole)
    centre = -pole
    try:
        pts = {v: _xy(t.position(v), pole) for v in t.vertices}
    except PointAtInfinityError as exc:
        raise RenderError("a vertex sits at the projection centre; choose another pole") from exc

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-2.2 -2.2 4.4 4.4" '
           'width="600" height="600">',
           f'<title>{quoteattr(t.family.tag)[1:-1]} tiling, f={t.f}</title>',
           '<g id="faces">']
    for i, tile in enumerate(t.tiles):
        poly = " ".join(f"{_fmt(pts[c.vertex][0])},{_fmt(pts[c.vertex][1])}" for c in tile.corners)
        out.append(f'<g class="face" id="tile-{i}"><polygon points="{poly}" fill="{FACE_FILL}" '
                   f'fill-opacity="0.6" stroke="none"/></g>')
    out.append('</g>')
    out.append('<g id="edges" fill="none" stroke-linecap="round">')
    for (ti, s), _, label in t.edges:
        arc = _edge_arc(t, ti, s)
        hit = _centre_parameter(arc, centre)
        if hit is None:
            d = _arc_segment(arc, 0.0, arc.length, pole)
        elif split_at_infinity:
            gap = 1e-3
            d = " ".join(_arc_segment(arc, a, b, pole)
                         for a, b in ((0.0, hit - gap), (hit + gap, arc.length)) if b > a)
        else:
            raise RenderError(f"edge {t.half_edge(ti, s)} passes through the projection centre")
        out.append(f'<path class="edge edge-{label}" d="{d}" {EDGE_STYLE[label]}/>')
    out.append('</g>')
    out.append('</svg>')
    return ("\n".join(out) + "\n").encode()
