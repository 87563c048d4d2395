"""Points, great arcs, triangle laws and projections on the unit sphere.

Everything here works on unit 3-vectors.  :class:`SpherePoint` is the
public value type; the functions also accept any length-3 sequence, which
is normalised on the way in.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import DegenerateArcError, InfeasibleTriangleError, PointAtInfinityError

NORM_TOL = 1e-12
BOUNDARY_TOL = 1e-10
INFINITY_TOL = 1e-9


def clamp_unit(x):
    return min(1.0, max(-1.0, float(x)))


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        r = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if r == 0.0 or not math.isfinite(r):
            raise ValueError("cannot normalise a zero or non-finite vector")
        if abs(r - 1.0) > NORM_TOL:
            object.__setattr__(self, "x", self.x / r)
            object.__setattr__(self, "y", self.y / r)
            object.__setattr__(self, "z", self.z / r)

    @classmethod
    def from_vector(cls, v) -> "SpherePoint":
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_lonlat(cls, lon: float, lat: float) -> "SpherePoint":
        return cls(math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __neg__(self):
        return SpherePoint(-self.x, -self.y, -self.z)

    def __iter__(self):
        return iter((self.x, self.y, self.z))


NORTH = SpherePoint(0.0, 0.0, 1.0)
SOUTH = SpherePoint(0.0, 0.0, -1.0)


def as_vec(p) -> np.ndarray:
    """Return ``p`` as a normalised numpy 3-vector."""
    if isinstance(p, SpherePoint):
        return p.vec
    v = np.asarray(p, dtype=float)
    return v / np.linalg.norm(v)


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def angular_distance(p, q) -> float:
    """Great-circle distance in radians, in ``[0, pi]``."""
    u, v = as_vec(p), as_vec(q)
    # atan2 keeps full precision for nearly equal and nearly antipodal points
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def rotate(v, axis, angle: float) -> np.ndarray:
    """Rotate ``v`` about the unit ``axis`` by ``angle`` (right-hand rule)."""
    return Rotation.from_rotvec(normalize(axis) * angle).apply(np.asarray(v, dtype=float))


def extend_double(p, q) -> SpherePoint:
    """Point r on the great circle of p, q such that q is the midpoint of arc p->r."""
    pv, qv = as_vec(p), as_vec(q)
    axis = np.cross(pv, qv)
    if np.linalg.norm(axis) < 1e-12:
        raise DegenerateArcError("extend_double needs two points that are neither equal nor antipodal")
    d = angular_distance(pv, qv)
    return SpherePoint.from_vector(rotate(pv, axis, 2.0 * d))


def tangent_toward(v, u) -> np.ndarray:
    """Unit tangent at v pointing along the shortest arc to u."""
    v, u = np.asarray(v, dtype=float), np.asarray(u, dtype=float)
    t = u - np.dot(u, v) * v
    n = np.linalg.norm(t)
    if n < 1e-14:
        raise DegenerateArcError("tangent undefined for coincident or antipodal points")
    return t / n


def walk(v, direction, length: float) -> np.ndarray:
    """Travel ``length`` radians from v along the unit tangent ``direction``."""
    return math.cos(length) * np.asarray(v) + math.sin(length) * np.asarray(direction)


def oriented_angle(v, d_from, d_to) -> float:
    """Counterclockwise angle (seen from outside) at v turning tangent d_from onto d_to, in [0, 2pi)."""
    v = np.asarray(v, dtype=float)
    s = np.dot(v, np.cross(d_from, d_to))
    c = np.dot(d_from, d_to)
    ang = math.atan2(s, c)
    return ang + 2.0 * math.pi if ang < 0.0 else ang


def cos_law_side(b: float, c: float, A: float) -> float:
    """Side opposite angle A in a spherical triangle with sides b, c enclosing A."""
    return math.acos(clamp_unit(math.cos(b) * math.cos(c) + math.sin(b) * math.sin(c) * math.cos(A)))


def cos_law_angle(a: float, b: float, c: float, tol: float = 1e-12) -> float:
    """Angle opposite side a in the spherical triangle with sides a, b, c."""
    if not (abs(b - c) - tol <= a <= b + c + tol and a + b + c <= 2.0 * math.pi + tol):
        raise InfeasibleTriangleError(f"sides ({a}, {b}, {c}) violate the spherical triangle inequalities")
    denom = math.sin(b) * math.sin(c)
    if denom == 0.0:
        raise InfeasibleTriangleError("sides b and c must lie strictly inside (0, pi)")
    return math.acos(clamp_unit((math.cos(a) - math.cos(b) * math.cos(c)) / denom))


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class SphericalTriangleRegion:
    """Spherical triangle with vertices stored counterclockwise seen from outside.

    Vertices given clockwise are reordered, so any non-degenerate triple works.
    """

    v1: SpherePoint
    v2: SpherePoint
    v3: SpherePoint

    def __post_init__(self):
        a, b, c = (as_vec(v) for v in (self.v1, self.v2, self.v3))
        det = float(np.dot(a, np.cross(b, c)))
        if abs(det) < 1e-12:
            raise DegenerateArcError("triangle vertices lie on one great circle")
        for p, q in ((a, b), (b, c), (c, a)):
            d = angular_distance(p, q)
            if not 0.0 < d < math.pi:
                raise DegenerateArcError("triangle sides must lie strictly inside (0, pi)")
        if det < 0:
            v2, v3 = self.v2, self.v3
            object.__setattr__(self, "v2", v3)
            object.__setattr__(self, "v3", v2)

    @property
    def vertices(self):
        return (self.v1, self.v2, self.v3)

    def centroid(self) -> SpherePoint:
        return SpherePoint.from_vector(sum(as_vec(v) for v in self.vertices))


def in_triangle(p, t: SphericalTriangleRegion, tol: float = BOUNDARY_TOL) -> Location:
    pv = as_vec(p)
    a, b, c = (as_vec(v) for v in t.vertices)
    # unit edge normals, so tol is the same distance band as in on_open_arc
    dets = [float(np.dot(pv, normalize(np.cross(u, w)))) for u, w in ((a, b), (b, c), (c, a))]
    if all(d > tol for d in dets):
        return Location.INTERIOR
    if all(d > -tol for d in dets):
        return Location.BOUNDARY
    return Location.EXTERIOR


def on_open_arc(p, u, w, tol: float = BOUNDARY_TOL) -> bool:
    """True when p lies on the minor arc from u to w, excluding both endpoints."""
    pv, uv, wv = as_vec(p), as_vec(u), as_vec(w)
    n = normalize(np.cross(uv, wv))
    if abs(np.dot(pv, n)) > tol:
        return False
    # strictly between: p on the same side of u as w and of w as u
    return (np.dot(np.cross(uv, pv), n) > tol) and (np.dot(np.cross(pv, wv), n) > tol)


def tangent_basis(pole) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed orthonormal basis (e1, e2) of the tangent plane at ``pole``."""
    p = as_vec(pole)
    ref = np.array([1.0, 0.0, 0.0]) if abs(p[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = normalize(ref - np.dot(ref, p) * p)
    return e1, np.cross(p, e1)


def stereo_project(p, pole=NORTH) -> tuple[float, float]:
    """Stereographic image from the antipode of ``pole``.

    The great circle at distance pi/2 from the pole maps to the unit circle,
    so a point at angular distance t from the pole lands at radius tan(t/2).
    """
    pv, c = as_vec(p), as_vec(pole)
    denom = 1.0 + float(np.dot(pv, c))
    if np.linalg.norm(pv + c) < INFINITY_TOL:
        raise PointAtInfinityError("point coincides with the projection centre")
    e1, e2 = tangent_basis(c)
    return float(np.dot(pv, e1)) / denom, float(np.dot(pv, e2)) / denom


def stereo_unproject(u: float, v: float, pole=NORTH) -> SpherePoint:
    c = as_vec(pole)
    e1, e2 = tangent_basis(c)
    r2 = u * u + v * v
    return SpherePoint.from_vector(((1.0 - r2) * c + 2.0 * u * e1 + 2.0 * v * e2) / (1.0 + r2))


class GreatArc:
    """Oriented great arc of arbitrary length in (0, 2pi).

    The arc starts at ``start`` and rotates about ``axis`` by ``length``;
    unlike a minor arc it can run the long way round.
    """

    def __init__(self, start, axis, length: float):
        self.start = as_vec(start)
        self.axis = normalize(axis)
        self.length = float(length)

    @classmethod
    def minor(cls, p, q) -> "GreatArc":
        pv, qv = as_vec(p), as_vec(q)
        axis = np.cross(pv, qv)
        if np.linalg.norm(axis) < 1e-14:
            raise DegenerateArcError("minor arc undefined for coincident or antipodal points")
        return cls(pv, axis, angular_distance(pv, qv))

    @property
    def end(self) -> np.ndarray:
        return self.point(self.length)

    def point(self, t: float) -> np.ndarray:
        return rotate(self.start, self.axis, t)

    def tangent(self, t: float) -> np.ndarray:
        return np.cross(self.axis, self.point(t))

    def parameter_of(self, x) -> float | None:
        """Arc parameter in [0, 2pi) of a point x on the carrier circle, or None if off it."""
        x = as_vec(x)
        if abs(np.dot(x, self.axis)) > 1e-9:
            return None
        t = math.atan2(np.dot(np.cross(self.start, x), self.axis), np.dot(self.start, x))
        return t + 2.0 * math.pi if t < 0 else t

    def sample(self, k: int) -> np.ndarray:
        return np.array([self.point(self.length * i / (k - 1)) for i in range(k)])


def arcs_intersect(s: GreatArc, t: GreatArc, tol: float = 1e-9, skip_shared: bool = False) -> bool:
    """Whether two great arcs meet, optionally ignoring contact at shared endpoints."""
    shared = [
        x for x in (s.start, s.end) if skip_shared and (
            np.linalg.norm(x - t.start) < 1e-9 or np.linalg.norm(x - t.end) < 1e-9)
    ]

    def is_shared(x):
        return any(np.linalg.norm(x - y) < 1e-7 for y in shared)

    def within(arc, x):
        u = arc.parameter_of(x)
        if u is None:
            return False
        return u <= arc.length + tol or u >= 2.0 * math.pi - tol

    n = np.cross(s.axis, t.axis)
    if np.linalg.norm(n) < 1e-12:
        # same carrier circle: test sample overlap away from shared endpoints
        pts = [s.point(s.length * i / 64.0) for i in range(1, 64)]
        return any(within(t, x) and not is_shared(x) for x in pts)
    n = normalize(n)
    for x in (n, -n):
        if within(s, x) and within(t, x) and not is_shared(x):
            return True
    return False
