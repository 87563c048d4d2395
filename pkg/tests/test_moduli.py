"""Strata of the 2-layer moduli, reductions and the subdivision interval."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from a2bc_tilings.moduli import (
    OPEN_STRATA,
    ReductionTag,
    TwoLayerRegion,
    a_equals_c_subdivision_b,
    boundary_self_intersects,
    classify_two_layer,
    detect_reduction,
    sample_stratum,
    subdivision_moduli,
    two_layer_regions,
)
from a2bc_tilings.quad_solver import (
    SUBDIVISION_A3B_B,
    EdgeTriple,
    TwoLayerConstruction,
    solve_subdivision,
    solve_three_layer,
    solve_two_layer,
)

PI = math.pi
MIRROR = np.array([-1.0, 1.0, 1.0])


def test_named_points():
    n = 4
    regions = two_layer_regions(n)
    t = TwoLayerConstruction(n, (0.0, -1.0, -1.0))
    assert classify_two_layer(n, regions[TwoLayerRegion.ConvexInterior].centroid()) is TwoLayerRegion.ConvexInterior
    assert classify_two_layer(n, regions[TwoLayerRegion.ConcaveBeta].centroid()) is TwoLayerRegion.ConcaveBeta
    assert classify_two_layer(n, regions[TwoLayerRegion.ConcaveGamma].centroid()) is TwoLayerRegion.ConcaveGamma
    assert classify_two_layer(n, regions[TwoLayerRegion.ConcaveDelta].centroid()) is TwoLayerRegion.ConcaveDelta
    mid = t.E.vec + t.F.vec
    assert classify_two_layer(n, mid) is TwoLayerRegion.DegenerateDelta
    assert classify_two_layer(n, t.A_prime.vec + t.E.vec) is TwoLayerRegion.DegenerateBeta
    assert classify_two_layer(n, t.A_prime.vec + t.F.vec) is TwoLayerRegion.DegenerateGamma
    assert classify_two_layer(n, (0.0, 1.0, 0.2)) is TwoLayerRegion.SelfIntersecting


def test_edge_midpoint_gives_straight_delta():
    t = TwoLayerConstruction(5, (0.0, -1.0, 0.0))
    assert abs(solve_two_layer(t).angles.delta - PI) < 1e-9


def test_degenerate_beta_gives_straight_beta():
    t = TwoLayerConstruction(5, (0.0, -1.0, -1.0))
    D = t.A_prime.vec + 0.6 * t.E.vec
    g = solve_two_layer(TwoLayerConstruction(5, D))
    assert abs(g.angles.beta - PI) < 1e-9


@pytest.mark.parametrize("n", [3, 5, 8])
def test_strata_reflex_flags(n):
    rng = np.random.default_rng(n)
    for stratum in OPEN_STRATA:
        for D in sample_stratum(n, stratum, 25, rng):
            assert classify_two_layer(n, D) is stratum
            g = solve_two_layer(TwoLayerConstruction(n, D))
            reflex = [k for k in ("alpha", "beta", "gamma", "delta") if g.angles[k] > PI]
            assert reflex == ([stratum.reflex] if stratum.reflex else [])
            assert not boundary_self_intersects(n, D)


unit = st.tuples(*(st.floats(-1, 1, allow_nan=False),) * 3).filter(lambda v: np.linalg.norm(v) > 0.1)


@given(unit, st.integers(3, 12))
def test_self_intersecting_is_detected_directly(D, n):
    r = classify_two_layer(n, D)
    if r is TwoLayerRegion.SelfIntersecting:
        try:
            assert boundary_self_intersects(n, D)
        except ValueError:
            pass  # B or C undefined: D at E, F or their antipodes


@given(unit, st.integers(3, 12))
def test_mirror_symmetry(D, n):
    D = np.array(D)
    r, s = classify_two_layer(n, D), classify_two_layer(n, D * MIRROR)
    swap = {TwoLayerRegion.ConcaveBeta: TwoLayerRegion.ConcaveGamma,
            TwoLayerRegion.ConcaveGamma: TwoLayerRegion.ConcaveBeta,
            TwoLayerRegion.DegenerateBeta: TwoLayerRegion.DegenerateGamma,
            TwoLayerRegion.DegenerateGamma: TwoLayerRegion.DegenerateBeta}
    assert s is swap.get(r, r)
    if r in OPEN_STRATA:
        g = solve_two_layer(TwoLayerConstruction(n, D))
        h = solve_two_layer(TwoLayerConstruction(n, D * MIRROR))
        # rounding in the angles grows like eps / (shortest edge) near the corners of the moduli
        tol = 1e-8 + 1e-15 / min(*g.edges, *h.edges)
        assert abs(g.angles.beta - h.angles.gamma) < tol
        assert abs(g.angles.gamma - h.angles.beta) < tol


def test_reduction_examples():
    assert detect_reduction(solve_subdivision(PI / 4 - 1e-12).edges, 1e-9) is ReductionTag.Reduce_a2b2
    assert detect_reduction(solve_subdivision(SUBDIVISION_A3B_B).edges) is ReductionTag.Reduce_a3b_ab
    assert detect_reduction(solve_three_layer(2).edges) is ReductionTag.None_a2bc
    assert detect_reduction(EdgeTriple(1.0, 1.0, 1.0)) is ReductionTag.Reduce_a4
    assert detect_reduction(EdgeTriple(1.0, 0.5, 1.0)) is ReductionTag.Reduce_a3b_ac


@given(st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_reduction_b_c_symmetric(a, x):
    swap = {ReductionTag.Reduce_a3b_ab: ReductionTag.Reduce_a3b_ac,
            ReductionTag.Reduce_a3b_ac: ReductionTag.Reduce_a3b_ab}
    r = detect_reduction(EdgeTriple(a, x, x + 0.3))
    assert detect_reduction(EdgeTriple(a, x + 0.3, x)) is swap.get(r, r)
    assert detect_reduction(EdgeTriple(a, x, x)) in (ReductionTag.Reduce_a2b2, ReductionTag.Reduce_a4)


def test_subdivision_moduli():
    assert str(subdivision_moduli(0.1)) == "Valid_a2bc"
    assert subdivision_moduli(SUBDIVISION_A3B_B).tag is ReductionTag.Reduce_a3b_ab
    assert subdivision_moduli(PI / 4).tag is ReductionTag.Reduce_a2b2
    assert subdivision_moduli(PI / 3).status == "Invalid"
    assert subdivision_moduli(0.0).status == "Invalid"
    assert a_equals_c_subdivision_b() > PI / 4
