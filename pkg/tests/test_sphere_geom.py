"""Points, arcs, triangle laws and projections."""

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from a2bc_tilings.errors import DegenerateArcError, InfeasibleTriangleError, PointAtInfinityError
from a2bc_tilings.sphere_geom import (
    NORTH,
    SOUTH,
    GreatArc,
    Location,
    SpherePoint,
    SphericalTriangleRegion,
    angular_distance,
    arcs_intersect,
    cos_law_angle,
    cos_law_side,
    extend_double,
    in_triangle,
    on_open_arc,
    oriented_angle,
    stereo_project,
    stereo_unproject,
    tangent_toward,
)

coord = st.floats(-1, 1, allow_nan=False)
unit_vectors = st.tuples(coord, coord, coord).filter(lambda v: np.linalg.norm(v) > 0.1).map(
    lambda v: np.array(v) / np.linalg.norm(v))
sides = st.floats(0.05, math.pi - 0.05)


def test_point_is_normalised():
    p = SpherePoint(3.0, 0.0, 4.0)
    assert math.isclose(p.x, 0.6) and math.isclose(p.z, 0.8)
    with pytest.raises(ValueError):
        SpherePoint(0.0, 0.0, 0.0)


def test_lonlat():
    p = SpherePoint.from_lonlat(math.pi / 2, 0.0)
    assert np.allclose(p.vec, [0, 1, 0])


@given(unit_vectors, unit_vectors)
def test_distance_symmetric_and_bounded(p, q):
    d = angular_distance(p, q)
    assert 0.0 <= d <= math.pi
    assert math.isclose(d, angular_distance(q, p), abs_tol=1e-12)


@given(unit_vectors, unit_vectors, unit_vectors)
def test_triangle_inequality(p, q, r):
    assert angular_distance(p, r) <= angular_distance(p, q) + angular_distance(q, r) + 1e-9


@given(unit_vectors, unit_vectors)
def test_extend_double_midpoint(p, q):
    d = angular_distance(p, q)
    assume(0.05 < d < math.pi - 0.05)
    r = extend_double(p, q).vec
    # q is the midpoint of the arc p -> r of length 2d
    arc = GreatArc(p, np.cross(p, q), 2 * d)
    assert np.allclose(arc.point(d), q, atol=1e-9)
    assert np.allclose(arc.end, r, atol=1e-9)


def test_extend_double_degenerate():
    with pytest.raises(DegenerateArcError):
        extend_double(NORTH, NORTH)
    with pytest.raises(DegenerateArcError):
        extend_double(NORTH, SOUTH)


@given(sides, sides, st.floats(0.05, math.pi - 0.05))
def test_cosine_laws_invert(b, c, A):
    a = cos_law_side(b, c, A)
    assume(a > 1e-3)
    assert math.isclose(cos_law_angle(a, b, c, tol=1e-9), A, abs_tol=1e-6)


def test_cos_law_infeasible():
    with pytest.raises(InfeasibleTriangleError):
        cos_law_angle(2.0, 0.3, 0.3)


def test_right_triangle_octant():
    # the octant triangle has all sides and angles pi/2
    assert math.isclose(cos_law_side(math.pi / 2, math.pi / 2, math.pi / 2), math.pi / 2)
    assert math.isclose(cos_law_angle(math.pi / 2, math.pi / 2, math.pi / 2), math.pi / 2)


def test_oriented_angle_counterclockwise():
    v = np.array([0.0, 0.0, 1.0])
    x, y = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    assert math.isclose(oriented_angle(v, x, y), math.pi / 2)
    assert math.isclose(oriented_angle(v, y, x), 3 * math.pi / 2)


@given(unit_vectors, unit_vectors, unit_vectors)
def test_triangle_centroid_inside(a, b, c):
    assume(abs(np.dot(a, np.cross(b, c))) > 1e-3)
    assume(min(angular_distance(a, b), angular_distance(b, c), angular_distance(c, a)) > 1e-3)
    t = SphericalTriangleRegion(SpherePoint.from_vector(a), SpherePoint.from_vector(b), SpherePoint.from_vector(c))
    assert in_triangle(t.centroid(), t) is Location.INTERIOR
    assert in_triangle(-t.centroid(), t) is Location.EXTERIOR


def test_triangle_boundary_and_arc():
    t = SphericalTriangleRegion(SpherePoint(1, 0, 0), SpherePoint(0, 1, 0), NORTH)
    mid = SpherePoint(1, 1, 0)
    assert in_triangle(mid, t) is Location.BOUNDARY
    assert on_open_arc(mid, (1, 0, 0), (0, 1, 0))
    assert not on_open_arc((1, 0, 0), (1, 0, 0), (0, 1, 0))
    assert not on_open_arc((1, -1, 0), (1, 0, 0), (0, 1, 0))


@given(unit_vectors, unit_vectors)
def test_stereo_round_trip(p, pole):
    assume(np.linalg.norm(p + pole) > 1e-2)
    u, v = stereo_project(p, pole)
    assert np.allclose(stereo_unproject(u, v, pole).vec, p, atol=1e-8)
    # radius tan(t/2) for a point at distance t from the pole
    assert math.isclose(math.hypot(u, v), math.tan(angular_distance(p, pole) / 2), rel_tol=1e-8, abs_tol=1e-9)


def test_stereo_equator_unit_circle_and_infinity():
    assert math.isclose(math.hypot(*stereo_project((1, 0, 0))), 1.0)
    with pytest.raises(PointAtInfinityError):
        stereo_project(SOUTH)


def test_great_arc_long_way():
    arc = GreatArc((1, 0, 0), (0, 0, 1), 1.5 * math.pi)
    assert np.allclose(arc.end, [0, -1, 0], atol=1e-12)
    assert np.allclose(arc.tangent(0.0), [0, 1, 0])
    assert math.isclose(arc.parameter_of((-1, 0, 0)), math.pi)
    assert np.allclose(tangent_toward(np.array([1.0, 0, 0]), np.array([0, 0, 1.0])), [0, 0, 1])


def test_arcs_intersect():
    equator = GreatArc.minor((1, 0, 0), (0, 1, 0))
    meridian = GreatArc.minor(SpherePoint(1, 1, 1), SpherePoint(1, 1, -1))
    assert arcs_intersect(equator, meridian)
    far = GreatArc.minor(SpherePoint(-1, -1, 1), SpherePoint(-1, -1, -1))
    assert not arcs_intersect(equator, far)
    touching = GreatArc.minor((0, 1, 0), (0, 0, 1))
    assert arcs_intersect(equator, touching)
    assert not arcs_intersect(equator, touching, skip_shared=True)
