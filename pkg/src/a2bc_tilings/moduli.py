"""Where a parameter sits in the moduli of its family.

For the 2-layer family the free vertex D ranges over the sphere and the
quadrilateral ABDC is simple exactly on the union of a few triangles and
arcs built from the construction points.  For subdivisions the parameter is
the short piece b of an octahedron edge.  Both can also degenerate when two
of the edge lengths a, b, c coincide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidParameterError
from .quad_solver import (
    PI,
    EdgeTriple,
    TwoLayerConstruction,
    solve_subdivision,
)
from .sphere_geom import (
    BOUNDARY_TOL,
    Location,
    SphericalTriangleRegion,
    arcs_intersect,
    as_vec,
    in_triangle,
    on_open_arc,
)


class TwoLayerRegion(enum.Enum):
    ConvexInterior = "convex"
    ConcaveDelta = "concave-delta"
    ConcaveBeta = "concave-beta"
    ConcaveGamma = "concave-gamma"
    DegenerateDelta = "degenerate-delta"
    DegenerateBeta = "degenerate-beta"
    DegenerateGamma = "degenerate-gamma"
    SelfIntersecting = "self-intersecting"

    @property
    def is_valid(self) -> bool:
        return self is not TwoLayerRegion.SelfIntersecting

    @property
    def is_degenerate(self) -> bool:
        return self.name.startswith("Degenerate")

    @property
    def reflex(self) -> str | None:
        """Name of the angle above pi in this stratum, if any."""
        return {
            TwoLayerRegion.ConcaveDelta: "delta",
            TwoLayerRegion.ConcaveBeta: "beta",
            TwoLayerRegion.ConcaveGamma: "gamma",
        }.get(self)


OPEN_STRATA = (TwoLayerRegion.ConvexInterior, TwoLayerRegion.ConcaveDelta,
               TwoLayerRegion.ConcaveBeta, TwoLayerRegion.ConcaveGamma)


def two_layer_regions(n: int) -> dict[TwoLayerRegion, SphericalTriangleRegion]:
    """The four open triangles of the 2-layer moduli for a given n."""
    t = TwoLayerConstruction(n, (0.0, -1.0, -1.0))
    A, Ap, E, F, P, Q = t.A, t.A_prime, t.E, t.F, t.P, t.Q
    return {
        TwoLayerRegion.ConcaveDelta: SphericalTriangleRegion(A, E, F),
        TwoLayerRegion.ConvexInterior: SphericalTriangleRegion(Ap, E, F),
        TwoLayerRegion.ConcaveBeta: SphericalTriangleRegion(Ap, E, P),
        TwoLayerRegion.ConcaveGamma: SphericalTriangleRegion(Ap, F, Q),
    }


def classify_two_layer(n: int, D, tol: float = BOUNDARY_TOL) -> TwoLayerRegion:
    """Stratum of the free vertex D; degenerate arcs win ties with the open triangles."""
    if int(n) != n or n < 3:
        raise InvalidParameterError(f"two-layer tilings need n >= 3, got {n}")
    t = TwoLayerConstruction(int(n), (0.0, -1.0, -1.0))
    d = as_vec(D)
    if on_open_arc(d, t.E, t.F, tol):
        return TwoLayerRegion.DegenerateDelta
    if on_open_arc(d, t.A_prime, t.E, tol):
        return TwoLayerRegion.DegenerateBeta
    if on_open_arc(d, t.A_prime, t.F, tol):
        return TwoLayerRegion.DegenerateGamma
    for stratum, tri in two_layer_regions(int(n)).items():
        if in_triangle(d, tri, tol) is Location.INTERIOR:
            return stratum
    return TwoLayerRegion.SelfIntersecting


def boundary_self_intersects(n: int, D) -> bool:
    """Direct test: do two boundary arcs of ABDC meet away from shared corners?"""
    arcs = TwoLayerConstruction(int(n), D).boundary_arcs()
    for i in range(4):
        for j in range(i + 1, 4):
            adjacent = j == i + 1 or (i == 0 and j == 3)
            if arcs_intersect(arcs[i], arcs[j], skip_shared=adjacent):
                return True
    return False


class ReductionTag(enum.Enum):
    None_a2bc = "a2bc"
    Reduce_a2b2 = "a2b2"
    Reduce_a3b_ab = "a3b (a=b)"
    Reduce_a3b_ac = "a3b (a=c)"
    Reduce_a4 = "a4"


def detect_reduction(e: EdgeTriple, tol: float = 1e-9) -> ReductionTag:
    ab, ac, bc = abs(e.a - e.b) < tol, abs(e.a - e.c) < tol, abs(e.b - e.c) < tol
    if ab and ac and bc:
        return ReductionTag.Reduce_a4
    if bc:
        return ReductionTag.Reduce_a2b2
    if ab:
        return ReductionTag.Reduce_a3b_ab
    if ac:
        return ReductionTag.Reduce_a3b_ac
    return ReductionTag.None_a2bc


@dataclass(frozen=True)
class SubdivisionModuli:
    status: str  # "Valid_a2bc", "Reduction" or "Invalid"
    tag: ReductionTag | None = None

    def __str__(self):
        return f"Reduction({self.tag.name})" if self.tag else self.status


def subdivision_moduli(b: float, tol: float = 1e-9) -> SubdivisionModuli:
    if not (0.0 < b <= PI / 4 + tol):
        return SubdivisionModuli("Invalid")
    tag = detect_reduction(solve_subdivision(min(b, PI / 4)).edges, tol)
    if tag is not ReductionTag.None_a2bc:
        return SubdivisionModuli("Reduction", tag)
    return SubdivisionModuli("Valid_a2bc")


def a_equals_c_subdivision_b() -> float:
    """Where a = c would happen on the subdivision curve; it lies past pi/4."""
    return math.atan((1.0 + math.sqrt(3.0)) / 2.0)


def sample_stratum(n: int, stratum: TwoLayerRegion, k: int, rng, margin: float = 0.02):
    """k points well inside one open stratum, from random barycentric weights."""
    tri = two_layer_regions(n)[stratum]
    verts = [as_vec(v) for v in tri.vertices]
    out = []
    while len(out) < k:
        w = rng.dirichlet((1.0, 1.0, 1.0))
        if w.min() < margin:
            continue
        p = sum(wi * v for wi, v in zip(w, verts))
        out.append(p / math.sqrt(float(p @ p)))
    return out
