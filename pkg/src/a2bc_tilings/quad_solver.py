"""Angle and edge data of the a^2bc quadrilateral for each tiling family.

The quadrilateral has edges a, a, b, c in cyclic order.  Read
counterclockwise in its positive orientation the corners are

    alpha --a-- beta --b-- delta --c-- gamma --a-- alpha

so alpha sits between the two a-edges, beta between a and b, gamma between
a and c, and delta between b and c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import (
    DegenerateQuadrilateralError,
    InvalidParameterError,
    OutOfModuliError,
)
from .sphere_geom import (
    GreatArc,
    SpherePoint,
    angular_distance,
    as_vec,
    cos_law_angle,
    cos_law_side,
    extend_double,
    oriented_angle,
)

PI = math.pi
SQRT5 = math.sqrt(5.0)

ANGLE_NAMES = ("alpha", "beta", "gamma", "delta")
EDGE_NAMES = ("a", "b", "c")


@dataclass(frozen=True)
class AngleQuad:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma, self.delta))

    def __getitem__(self, name: str) -> float:
        return getattr(self, name)

    @property
    def total(self) -> float:
        return self.alpha + self.beta + self.gamma + self.delta

    def as_tuple(self):
        return tuple(self)


@dataclass(frozen=True)
class EdgeTriple:
    a: float
    b: float
    c: float

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __getitem__(self, name: str) -> float:
        return getattr(self, name)

    def as_tuple(self):
        return tuple(self)


@dataclass(frozen=True)
class QuadGeometry:
    """Angles and edges of one quadrilateral plus its beta-gamma diagonal.

    ``diagonal_x`` joins the beta and gamma corners, cutting the tile into an
    isosceles (a, a, x) triangle at alpha and a (b, c, x) triangle at delta.
    ``sub_angles`` are (A, B, C): the base angle of the isosceles triangle and
    the remainders gamma - A and beta - A.
    """

    angles: AngleQuad
    edges: EdgeTriple
    diagonal_x: float
    sub_angles: tuple[float, float, float] | None
    notes: tuple[str, ...] = field(default=(), compare=False)

    def swap_bc(self) -> "QuadGeometry":
        """The same quadrilateral with the names b/c and beta/gamma exchanged."""
        q, e = self.angles, self.edges
        sub = None
        if self.sub_angles is not None:
            A, B, C = self.sub_angles
            sub = (A, C, B)
        return replace(
            self,
            angles=AngleQuad(q.alpha, q.gamma, q.beta, q.delta),
            edges=EdgeTriple(e.a, e.c, e.b),
            sub_angles=sub,
        )

    def max_deviation(self, other: "QuadGeometry") -> float:
        vals = [abs(x - y) for x, y in zip(self.angles, other.angles)]
        vals += [abs(x - y) for x, y in zip(self.edges, other.edges)]
        return max(vals)


def geometry_from(angles: AngleQuad, edges: EdgeTriple, notes=()) -> QuadGeometry:
    x = cos_law_side(edges.b, edges.c, angles.delta)
    try:
        A = cos_law_angle(edges.a, edges.a, x)
    except ValueError:
        # no isosceles triangle on the diagonal, e.g. for strongly concave tiles
        return QuadGeometry(angles, edges, x, None, tuple(notes))
    return QuadGeometry(angles, edges, x, (A, angles.gamma - A, angles.beta - A), tuple(notes))


def angle_sum_residual(q: AngleQuad, f: int) -> float:
    """alpha + beta + gamma + delta - (2 + 4/f) pi."""
    if f != int(f) or f < 6 or f % 2:
        raise InvalidParameterError(f"f must be an even integer >= 6, got {f}")
    return q.total - (2.0 + 4.0 / f) * PI


def convexity_diagnostic(q: AngleQuad) -> dict:
    """Advisory check alpha + 2 beta > pi and alpha + 2 gamma > pi.

    Only meaningful for convex quadrilaterals; never used as a hard failure.
    """
    convex = all(x < PI for x in q)
    return {
        "convex": convex,
        "alpha+2beta>pi": q.alpha + 2 * q.beta > PI,
        "alpha+2gamma>pi": q.alpha + 2 * q.gamma > PI,
    }


# ---------------------------------------------------------------- 3-layer

def three_layer_angles(n: int) -> AngleQuad:
    return AngleQuad((n - 1) * PI / n, PI / n, (n + 1) * PI / (2 * n), PI / 2)


def three_layer_cubic(n: int, a: float) -> float:
    y = math.cos(PI / (2 * n)) * math.sin(a / 2)
    return 8 * y**3 - 4 * y + 1


def three_layer_cubic_roots(n: int) -> np.ndarray:
    """Numeric roots in sin(a/2) of the cubic; used only as a cross-check."""
    k = math.cos(PI / (2 * n))
    roots = np.roots([8 * k**3, 0.0, -4 * k, 1.0])
    return np.sort(roots.real[np.abs(roots.imag) < 1e-12])


def solve_three_layer(n: int) -> QuadGeometry:
    """Unique quadrilateral of the 3-layer earth map tiling with 8n tiles."""
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"three-layer tilings need n >= 2, got {n}")
    n = int(n)
    k = math.cos(PI / (2 * n))
    # the root cos(pi/2n) sin(a/2) = 1/2 forces a vanishing sub-angle; discard it
    a = 2.0 * math.asin((SQRT5 - 1.0) / (4.0 * k))
    b = (PI - a) / 2.0
    c = math.acos(((3.0 - SQRT5) * k * k + SQRT5 - 2.0) / k)
    return geometry_from(three_layer_angles(n), EdgeTriple(a, b, c))


# ----------------------------------------------------------- subdivision

SUBDIVISION_FLIP_B = math.atan((3.0 - SQRT5) / 2.0)
SUBDIVISION_A3B_B = math.atan(math.sqrt(3.0) - 1.0)
SUBDIVISION_A2B2_B = PI / 4


def solve_subdivision(b: float) -> QuadGeometry:
    """Quadrilateral of the octahedron subdivision with b-edge length ``b``.

    Labels follow the moduli parametrisation b in (0, pi/4]: b is the shorter
    of the two pieces of an octahedron edge.  Use :meth:`QuadGeometry.swap_bc`
    to read the result with the names used for the 3-layer family.
    """
    if not 0.0 < b <= PI / 4 + 1e-15:
        raise OutOfModuliError(f"subdivision moduli is (0, pi/4], got b = {b}")
    c = PI / 2 - b
    s, co = math.sin(b), math.cos(b)
    a = math.acos(math.sqrt((math.sin(2 * b) + 1.0) / 3.0))
    gamma = math.acos(max(-1.0, min(1.0, (co - s) / ((s + co) * math.tan(a)))))
    angles = AngleQuad(2 * PI / 3, PI - gamma, gamma, PI / 2)
    return geometry_from(angles, EdgeTriple(a, b, c))


def common_quadrilateral() -> QuadGeometry:
    """The quadrilateral shared by the subdivision and 3-layer classes."""
    return solve_three_layer(3)


# ---------------------------------------------------------------- 2-layer

MID_LON = -PI / 2


@dataclass(frozen=True)
class TwoLayerConstruction:
    """Points of the 2-layer construction for a chosen free vertex D.

    A is the north pole and the midpoint of EF is (0, -1, 0), so E and F
    sit on the equator at longitudes -pi/2 -+ pi/(2n).  P and Q extend FE
    and EF by pi/2 beyond E and F.
    """

    n: int
    D: SpherePoint

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise InvalidParameterError(f"two-layer tilings need n >= 3, got {self.n}")
        if not isinstance(self.D, SpherePoint):
            object.__setattr__(self, "D", SpherePoint.from_vector(self.D))

    @property
    def A(self):
        return SpherePoint(0.0, 0.0, 1.0)

    @property
    def A_prime(self):
        return SpherePoint(0.0, 0.0, -1.0)

    @property
    def E(self):
        return SpherePoint.from_lonlat(MID_LON - PI / (2 * self.n), 0.0)

    @property
    def F(self):
        return SpherePoint.from_lonlat(MID_LON + PI / (2 * self.n), 0.0)

    @property
    def P(self):
        return SpherePoint.from_lonlat(MID_LON - PI / (2 * self.n) - PI / 2, 0.0)

    @property
    def Q(self):
        return SpherePoint.from_lonlat(MID_LON + PI / (2 * self.n) + PI / 2, 0.0)

    @property
    def B(self):
        return extend_double(self.D, self.E)

    @property
    def C(self):
        return extend_double(self.D, self.F)

    def boundary_arcs(self) -> list[GreatArc]:
        """Arcs A->B, B->D, D->C, C->A of the quadrilateral boundary.

        B->D and D->C pass through E and F and may be longer than pi.
        """
        D, E, F = as_vec(self.D), as_vec(self.E), as_vec(self.F)
        dB = 2.0 * angular_distance(D, E)
        dC = 2.0 * angular_distance(D, F)
        d_to_b = GreatArc(D, np.cross(D, E), dB)
        arc_bd = GreatArc(d_to_b.end, -d_to_b.axis, dB)
        arc_dc = GreatArc(D, np.cross(D, F), dC)
        return [
            GreatArc.minor(self.A, arc_bd.start),
            arc_bd,
            arc_dc,
            GreatArc.minor(arc_dc.end, self.A),
        ]


def solve_two_layer(t: TwoLayerConstruction) -> QuadGeometry:
    """Measure the quadrilateral ABDC built from the free vertex D.

    Interior angles are read counterclockwise from the outgoing to the
    incoming edge, so reflex corners come out above pi.
    """
    A, B, C = as_vec(t.A), as_vec(t.B), as_vec(t.C)
    if min(np.linalg.norm(A - B), np.linalg.norm(A - C)) < 1e-12:
        raise DegenerateQuadrilateralError("B or C coincides with the pole A")
    try:
        arcs = t.boundary_arcs()
    except ValueError as exc:
        raise DegenerateQuadrilateralError(str(exc)) from exc
    corners = []
    for i, arc in enumerate(arcs):
        prev = arcs[i - 1]
        d_next = arc.tangent(0.0)
        d_prev = -prev.tangent(prev.length)
        corners.append(oriented_angle(arc.start, d_next, d_prev))
    alpha, beta, delta, gamma = corners
    a = angular_distance(A, B)
    edges = EdgeTriple(a, arcs[1].length, arcs[2].length)
    notes = []
    if abs(angular_distance(A, C) - a) > 1e-9:
        notes.append("a-edges differ: construction is not symmetric")
    if abs(t.D.x) < 1e-12:
        notes.append("D on the bisecting longitude: beta assigned at B by convention")
    if edges.b > PI or edges.c > PI:
        notes.append("edge longer than pi")
    return geometry_from(AngleQuad(alpha, beta, gamma, delta), edges, notes)


# ---------------------------------------------------------------- closure

def closure_residual(g: QuadGeometry) -> float:
    """Rotation angle left over after walking the boundary once.

    Walks a, b, c, a with left turns pi - theta at beta, delta, gamma, alpha
    as body-frame rotations; a closed quadrilateral gives the identity.
    """
    q, e = g.angles, g.edges
    walk = [(e.a, q.beta), (e.b, q.delta), (e.c, q.gamma), (e.a, q.alpha)]
    total = Rotation.identity()
    for length, corner in walk:
        total = total * Rotation.from_rotvec([0.0, length, 0.0])
        total = total * Rotation.from_rotvec([0.0, 0.0, PI - corner])
    return float(total.magnitude())
