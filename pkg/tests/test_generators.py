"""Family generators, embedding and the flip constructions."""

import math

import numpy as np
import pytest

from a2bc_tilings.combinatorics import Tiling, VertexCensus, VertexType, census, special_tile, verify
from a2bc_tilings.errors import EmbeddingError, InvalidParameterError, OutOfModuliError, ReductionError
from a2bc_tilings.generators import (
    boundary_isometries,
    common_quadrilateral_tilings,
    embed,
    embed_with_residual,
    flip1_inner,
    gen_subdivision,
    gen_subdivision_flip,
    gen_three_layer,
    gen_three_layer_flip1,
    gen_three_layer_flip2,
    gen_two_layer,
    subdivision_corners,
    three_layer_corners,
)
from a2bc_tilings.moduli import ReductionTag, TwoLayerRegion
from a2bc_tilings.quad_solver import (
    SUBDIVISION_A2B2_B,
    SUBDIVISION_A3B_B,
    SUBDIVISION_FLIP_B,
    TwoLayerConstruction,
    solve_subdivision,
    solve_three_layer,
)

PI = math.pi


def census_of(**kw):
    return VertexCensus({VertexType.parse(k.replace("_", "^") if "_" in k else k): v for k, v in kw.items()})


def parse(s):
    return VertexCensus.parse(s)


def test_two_layer_basic():
    t = gen_two_layer(3, (0.0, -0.6, -0.8))
    assert t.f == 6 and census(t) == parse("T(6 bcd, 2 a^3)")
    # b and c midpoints sit on the equator, spaced pi/n apart
    mids = []
    for (ti, s), _, lab in t.edges:
        if lab in "bc":
            u, w = (t.position(v) for v in t.half_edge(ti, s))
            m = (u + w) / np.linalg.norm(u + w)
            if t.geometry.edges[lab] > PI:
                m = -m
            assert abs(m[2]) < 1e-9
            mids.append(math.atan2(m[1], m[0]))
    gaps = np.diff(np.sort(mids))
    assert np.allclose(gaps, PI / 3, atol=1e-9)


def test_two_layer_degenerate_warns():
    cons = TwoLayerConstruction(4, (0.0, -1.0, 0.0))
    t = gen_two_layer(4, cons.D)
    assert any("delta = pi" in w for w in t.warnings)
    assert math.isclose(t.geometry.angles.delta, PI, abs_tol=1e-9)
    assert verify(t).ok


def test_two_layer_outside_moduli():
    with pytest.raises(OutOfModuliError) as exc:
        gen_two_layer(3, (0.0, 0.3, 0.9))
    assert exc.value.region is TwoLayerRegion.SelfIntersecting
    with pytest.raises(InvalidParameterError):
        gen_two_layer(2, (0.0, -1.0, -0.5))


@pytest.mark.parametrize("n", [2, 3, 6])
def test_three_layer(n):
    t = gen_three_layer(n)
    assert t.f == 8 * n
    assert census(t) == parse(f"T({4 * n} ac^2, 2 b^{2 * n}, {2 * n} d^4, {2 * n} a^2b^2)")
    assert verify(t).ok
    # the beta^(2n) vertices sit at the poles
    poles = [v for v in t.vertices if t.vertex_type(v) == VertexType(0, 2 * n, 0, 0)]
    assert sorted(round(t.position(v)[2], 9) for v in poles) == [-1.0, 1.0]


def test_three_layer_range():
    with pytest.raises(InvalidParameterError):
        gen_three_layer(1)


def test_subdivision():
    t = gen_subdivision(0.2)
    assert t.f == 24 and census(t) == parse("T(8 a^3, 6 d^4, 12 b^2c^2)")
    assert all(special_tile(t).signature == "3444" for _ in range(1))
    # delta vertices are the octahedron vertices: pairwise pi/2 or pi apart
    deltas = [t.position(v) for v in t.vertices if t.vertex_type(v) == VertexType(0, 0, 0, 4)]
    dots = sorted(round(float(np.dot(p, q)), 9) for i, p in enumerate(deltas) for q in deltas[i + 1:])
    assert dots == [-1.0] * 3 + [0.0] * 12


def test_subdivision_reductions():
    with pytest.raises(ReductionError) as exc:
        gen_subdivision(SUBDIVISION_A3B_B)
    assert exc.value.tag is ReductionTag.Reduce_a3b_ab
    with pytest.raises(ReductionError) as exc:
        gen_subdivision(SUBDIVISION_A2B2_B)
    assert exc.value.tag is ReductionTag.Reduce_a2b2


def test_subdivision_special_angles():
    g = gen_subdivision(SUBDIVISION_FLIP_B).geometry.swap_bc()
    assert np.allclose(tuple(g.angles), (2 * PI / 3, PI / 3, 2 * PI / 3, PI / 2), atol=1e-12)


def test_subdivision_flip():
    t = gen_subdivision_flip()
    assert census(t) == parse("T(2 a^3, 6 ac^2, 6 d^4, 6 b^2c^2, 6 a^2b^2)")
    assert np.allclose(tuple(t.geometry.angles), (2 * PI / 3, PI / 3, 2 * PI / 3, PI / 2), atol=1e-12)
    assert special_tile(t).signature == "3344"


@pytest.mark.parametrize("m", [1, 2, 3])
def test_flip1(m):
    t = gen_three_layer_flip1(m)
    assert t.f == 8 * (2 * m + 1) and not t.warnings
    assert census(t) == parse(f"T({8 * m + 4} ac^2, 4 ab^{2 * m + 2}, {4 * m + 2} d^4, {4 * m} a^2b^2)")
    assert special_tile(t).signature == "3344"


@pytest.mark.parametrize("m", [1, 2, 3])
def test_flip2(m):
    t = gen_three_layer_flip2(m)
    assert t.f == 8 * (2 * m + 1) and not t.warnings
    expected = (f"T({8 * m + 2} ac^2, 2 ab^{2 * m + 2}, 2 b^{2 * m}c^2, {4 * m + 2} d^4, "
                f"{4 * m + 2} a^2b^2)")
    assert census(t) == parse(expected)
    assert special_tile(t).signature == "3344"


@pytest.mark.parametrize("m", [1, 2])
def test_flips_keep_totals(m):
    base = gen_three_layer(2 * m + 1)
    for t in (gen_three_layer_flip1(m), gen_three_layer_flip2(m)):
        assert t.f == base.f
        assert census(t).totals() == census(base).totals() == (t.f,) * 4
        assert census(t) != census(base)


def test_flip_ranges():
    for fn in (gen_three_layer_flip1, gen_three_layer_flip2):
        with pytest.raises(InvalidParameterError):
            fn(0)


def test_flip1_boundary_is_great_circle():
    base = gen_three_layer(3)
    found = list(boundary_isometries(base, flip1_inner(1)))
    assert found
    s, k, R, verts, idx = found[0]
    pts = np.array([base.positions[v] for v in verts])
    normal = np.cross(pts[0], pts[1])
    assert np.allclose(pts @ normal / np.linalg.norm(normal), 0.0, atol=1e-9)


def test_five_tilings_share_quadrilateral():
    g = solve_three_layer(3)
    ts = common_quadrilateral_tilings()
    assert len({str(census(t)) for t in ts.values()}) == 5
    for t in ts.values():
        assert verify(t).ok
        assert t.geometry.max_deviation(g) < 1e-8


def test_embed_examples():
    _, res = embed_with_residual(Tiling.from_corners(three_layer_corners(2)), solve_three_layer(2))
    assert res < 1e-12
    _, res = embed_with_residual(Tiling.from_corners(subdivision_corners()), solve_subdivision(0.2))
    assert res < 1e-12
    with pytest.raises(EmbeddingError):
        embed(Tiling.from_corners(three_layer_corners(2)), solve_three_layer(3))


def test_embed_seed_frame():
    t = embed(Tiling.from_corners(three_layer_corners(2)), solve_three_layer(2))
    alpha_vertex = t.tiles[0].corners[0].vertex
    assert np.allclose(t.position(alpha_vertex), [0, 0, 1])
