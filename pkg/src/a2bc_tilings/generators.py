"""Tilings of the classification, built combinatorially and then embedded.

Each generator writes down the tiles as corner lists with symbolic vertex
keys, derives edge labels from the corner labels, and places the vertices
on the sphere by walking edge lengths and turning interior angles outward
from a seed tile.  The flip families are obtained from their base tilings
by cutting along a closed boundary, moving the inner part by an isometry
that maps the boundary onto itself, and gluing it back.
"""

from __future__ import annotations

from collections import deque
from itertools import product

import numpy as np

from .combinatorics import (
    ALPHA,
    BETA,
    DELTA,
    GAMMA,
    FamilyId,
    Tile,
    Tiling,
    VertexCensus,
    VertexType,
    census,
    relabel_bc,
    verify,
)
from .errors import (
    EmbeddingError,
    InternalInconsistencyError,
    InvalidParameterError,
    OutOfModuliError,
    ReductionError,
)
from .moduli import ReductionTag, classify_two_layer, detect_reduction
from .quad_solver import (
    PI,
    SUBDIVISION_FLIP_B,
    QuadGeometry,
    TwoLayerConstruction,
    solve_subdivision,
    solve_three_layer,
    solve_two_layer,
)
from .sphere_geom import NORTH, as_vec, rotate, tangent_toward, walk

CONSISTENCY_TOL = 1e-6


# ------------------------------------------------------------------ embed

def _place_tile(t: Tiling, g: QuadGeometry, ti: int, start: int, pos: dict) -> float:
    """Walk round tile ti from its known corners start, start+1.

    Returns the largest disagreement with positions that were already known.
    """
    tile = t.tiles[ti]
    worst = 0.0
    prev = pos[tile.corners[start].vertex]
    cur = pos[tile.corners[(start + 1) % 4].vertex]
    for step in range(1, 4):
        i = (start + step) % 4
        L_in, L_out = g.edges[tile.sides[i - 1]], g.edges[tile.sides[i]]
        d_prev = tangent_toward(cur, prev)
        if L_in > PI:
            d_prev = -d_prev
        # interior angle runs counterclockwise from the outgoing to the incoming edge
        d_next = rotate(d_prev, cur, -g.angles[tile.corners[i].angle])
        nxt = walk(cur, d_next, L_out)
        nxt = nxt / np.linalg.norm(nxt)
        v = tile.corners[(i + 1) % 4].vertex
        if v in pos:
            worst = max(worst, float(np.linalg.norm(pos[v] - nxt)))
        else:
            pos[v] = nxt
        prev, cur = cur, pos[v]
    return worst


def embed_with_residual(t: Tiling, g: QuadGeometry, seed_corner: int | None = None,
                        seed_points=None) -> tuple[Tiling, float]:
    """Embed by breadth-first propagation; also return the propagation residual.

    The seed is corner ``seed_corner`` of tile 0 (default: its alpha corner)
    placed at the north pole with its outgoing edge heading to +x.
    ``seed_points`` overrides this with explicit positions of that corner
    and the next one.
    """
    tile0 = t.tiles[0]
    if seed_corner is None:
        seed_corner = next(i for i, c in enumerate(tile0.corners) if c.angle == ALPHA)
    v0 = tile0.corners[seed_corner].vertex
    v1 = tile0.corners[(seed_corner + 1) % 4].vertex
    pos: dict[int, np.ndarray] = {}
    if seed_points is not None:
        pos[v0], pos[v1] = as_vec(seed_points[0]), as_vec(seed_points[1])
    else:
        pos[v0] = as_vec(NORTH)
        pos[v1] = walk(pos[v0], np.array([1.0, 0.0, 0.0]), g.edges[tile0.sides[seed_corner]])
    residual = _place_tile(t, g, 0, seed_corner, pos)
    placed = {0}
    queue = deque([0])
    twin = t.twin
    while queue:
        ti = queue.popleft()
        for s in range(4):
            tj, sj = twin[(ti, s)]
            if tj in placed:
                continue
            placed.add(tj)
            residual = max(residual, _place_tile(t, g, tj, sj, pos))
            queue.append(tj)
    if len(placed) != t.f:
        raise EmbeddingError("tiling is not connected")
    if residual > CONSISTENCY_TOL:
        raise EmbeddingError(f"propagated positions disagree by {residual:.3e}; "
                             "geometry does not fit these combinatorics")
    out = t.with_embedding({v: p for v, p in pos.items()}, g)
    return out, residual


def embed(t: Tiling, g: QuadGeometry, seed_corner: int | None = None, seed_points=None) -> Tiling:
    return embed_with_residual(t, g, seed_corner, seed_points)[0]


def _finish(t: Tiling) -> Tiling:
    rep = verify(t)
    if not rep.ok:
        names = ", ".join(c.name for c in rep.failed())
        raise InternalInconsistencyError(f"generated tiling fails: {names}")
    return t


# -------------------------------------------------------------- two-layer

def two_layer_corners(n: int) -> list:
    N, S = "N", "S"
    tiles = []
    for i in range(n):
        B0, D0, B1 = ("B", i), ("D", i), ("B", (i + 1) % n)
        tiles.append([(ALPHA, N), (BETA, B0), (DELTA, D0), (GAMMA, B1)])
    for i in range(n):
        tiles.append([(ALPHA, S), (BETA, ("D", i)), (DELTA, ("B", i)), (GAMMA, ("D", (i - 1) % n))])
    return tiles


def gen_two_layer(n: int, D) -> Tiling:
    """2-layer earth map tiling with 2n tiles for the free vertex D."""
    if int(n) != n or n < 3:
        raise InvalidParameterError(f"two-layer tilings need n >= 3, got {n}")
    n = int(n)
    region = classify_two_layer(n, D)
    if not region.is_valid:
        raise OutOfModuliError(f"D lies in the {region.value} stratum for n={n}", region=region)
    cons = TwoLayerConstruction(n, D)
    g = solve_two_layer(cons)
    warnings = list(g.notes)
    if region.is_degenerate:
        which = region.name.removeprefix("Degenerate").lower()
        warnings.append(f"degenerate: {which} = pi, the tile is a triangle")
    base = Tiling.from_corners(
        two_layer_corners(n),
        family=FamilyId("two-layer", n=n, D=tuple(float(x) for x in cons.D)),
        warnings=tuple(warnings),
    )
    return _finish(embed(base, g, seed_corner=0, seed_points=(cons.A, cons.B)))


# ------------------------------------------------------------ three-layer

def _zone_corners(n: int, j: int) -> list:
    """The eight tiles of time zone j; local x runs from -2 to 2."""
    def v(x, y):
        return ((4 * j + x) % (4 * n), y)
    N, S = "N", "S"
    return [
        [(ALPHA, v(0, -2)), (BETA, N), (DELTA, v(-2, -2)), (GAMMA, v(-1, -2))],
        [(BETA, N), (ALPHA, v(0, -2)), (GAMMA, v(1, -2)), (DELTA, v(2, -2))],
        [(GAMMA, v(-1, -4)), (DELTA, v(0, -4)), (BETA, v(0, -2)), (ALPHA, v(-1, -2))],
        [(DELTA, v(0, -4)), (GAMMA, v(1, -4)), (ALPHA, v(1, -2)), (BETA, v(0, -2))],
        [(BETA, v(-2, -4)), (ALPHA, v(-1, -4)), (GAMMA, v(-1, -2)), (DELTA, v(-2, -2))],
        [(ALPHA, v(1, -4)), (BETA, v(2, -4)), (DELTA, v(2, -2)), (GAMMA, v(1, -2))],
        [(BETA, S), (DELTA, v(0, -4)), (GAMMA, v(-1, -4)), (ALPHA, v(-2, -4))],
        [(BETA, S), (ALPHA, v(2, -4)), (GAMMA, v(1, -4)), (DELTA, v(0, -4))],
    ]


def three_layer_corners(n: int) -> list:
    """Tile 8j + (k - 1) is tile k of time zone j."""
    return [tile for j in range(n) for tile in _zone_corners(n, j)]


def gen_three_layer(n: int) -> Tiling:
    """3-layer earth map tiling with 8n tiles; the beta^(2n) poles sit at the poles."""
    g = solve_three_layer(n)
    base = Tiling.from_corners(three_layer_corners(int(n)), family=FamilyId("three-layer", n=int(n)))
    # tile 0 lists its N corner second: start there so N is the north pole
    return _finish(embed(base, g, seed_corner=1))


# ------------------------------------------------------------ subdivision

def _octahedron_faces():
    """Faces as (sign triple, CCW vertex list), vertices written as (axis, sign)."""
    faces = []
    for s in product((1, -1), repeat=3):
        verts = [(0, s[0]), (1, s[1]), (2, s[2])]
        if s[0] * s[1] * s[2] < 0:
            verts = [verts[0], verts[2], verts[1]]
        faces.append((s, verts))
    return faces


def subdivision_corners() -> list:
    """24 tiles: one per (face, corner) of the octahedron.

    Each edge is split into a b-part and a c-part.  Faces with sign product
    +1 meet the b-part first when walking counterclockwise, the others last,
    so both sides of an edge agree.
    """
    tiles = []
    for s, verts in _octahedron_faces():
        white = s[0] * s[1] * s[2] > 0
        center = ("F", s)
        for i, V in enumerate(verts):
            Vn, Vp = verts[(i + 1) % 3], verts[i - 1]
            m_out = ("M", frozenset((V, Vn)))
            m_in = ("M", frozenset((Vp, V)))
            if white:
                tiles.append([(DELTA, V), (BETA, m_out), (ALPHA, center), (GAMMA, m_in)])
            else:
                tiles.append([(DELTA, V), (GAMMA, m_out), (ALPHA, center), (BETA, m_in)])
    return tiles


def gen_subdivision(b: float) -> Tiling:
    """Quadrilateral subdivision of the octahedron with short edge piece b."""
    g = solve_subdivision(b)
    tag = detect_reduction(g.edges)
    if tag is not ReductionTag.None_a2bc:
        raise ReductionError(f"b={b} reduces the quadrilateral to type {tag.value}", tag=tag)
    base = Tiling.from_corners(subdivision_corners(), family=FamilyId("subdivision", b=float(b)))
    return _finish(embed(base, g))


# ------------------------------------------------------------------ flips

def _boundary_cycle(t: Tiling, inner: set[int]) -> list[tuple[int, int]]:
    """Half-edges of the inner region facing outward, in cyclic order."""
    hs = [(ti, s) for ti in inner for s in range(4) if t.twin[(ti, s)][0] not in inner]
    by_start = {}
    for h in hs:
        u = t.half_edge(*h)[0]
        if u in by_start:
            raise InternalInconsistencyError("flip boundary is not a simple cycle")
        by_start[u] = h
    cycle = [min(hs)]
    while len(cycle) < len(hs):
        cycle.append(by_start[t.half_edge(*cycle[-1])[1]])
    if t.half_edge(*cycle[-1])[1] != t.half_edge(*cycle[0])[0]:
        raise InternalInconsistencyError("flip boundary does not close")
    return cycle


def _kabsch(P: np.ndarray, Q: np.ndarray, det_sign: int) -> tuple[np.ndarray, float]:
    """Orthogonal map with the given determinant sign best sending rows of P to Q."""
    U, _, Vt = np.linalg.svd(P.T @ Q)
    S = np.eye(3)
    if np.linalg.det(Vt.T @ U.T) * det_sign < 0:
        S[2, 2] = -1.0
    R = Vt.T @ S @ U.T
    return R, float(np.max(np.linalg.norm(P @ R.T - Q, axis=1)))


def boundary_isometries(t: Tiling, inner: set[int], tol: float = 1e-8):
    """Isometries mapping the flip boundary onto itself with labels preserved.

    Yields (sign, shift, matrix): sign +1 sends boundary vertex i to i+shift,
    sign -1 sends it to shift-i.
    """
    cycle = _boundary_cycle(t, inner)
    L = len(cycle)
    verts = [t.half_edge(*h)[0] for h in cycle]
    labels = [t.tiles[ti].sides[s] for ti, s in cycle]
    P = np.array([t.positions[v] for v in verts])
    for sign, k in product((1, -1), range(L)):
        if sign == 1 and k == 0:
            continue
        idx = [(sign * i + k) % L for i in range(L)]
        if sign == 1:
            ok = all(labels[i] == labels[idx[i]] for i in range(L))
        else:
            ok = all(labels[i] == labels[(k - i - 1) % L] for i in range(L))
        if not ok:
            continue
        R, res = _kabsch(P, P[idx], sign)
        if res < tol:
            yield sign, k, R, verts, idx


def flip(t: Tiling, inner: set[int], sign: int, shift_parity: int | None = None):
    """All distinct re-gluings of the inner region by boundary isometries of one handedness.

    Every candidate is checked combinatorially and metrically; each result is
    an embedded, verified tiling.
    """
    out = []
    for s, k, R, verts, idx in boundary_isometries(t, inner):
        if s != sign or (shift_parity is not None and k % 2 != shift_parity):
            continue
        sigma = {verts[i]: verts[idx[i]] for i in range(len(verts))}
        pos = dict(t.positions)
        moved = set()
        tiles = list(t.tiles)
        for ti in inner:
            corners = []
            for c in t.tiles[ti].corners:
                if c.vertex in sigma:
                    corners.append(c._replace(vertex=sigma[c.vertex]))
                else:
                    corners.append(c)
                    if c.vertex not in moved:
                        moved.add(c.vertex)
                        pos[c.vertex] = tuple(R @ np.array(t.positions[c.vertex]))
            tile = Tile(tuple(corners), t.tiles[ti].sides)
            tiles[ti] = tile.reversed() if s < 0 else tile
        cand = Tiling(tuple(tiles), positions=pos, geometry=t.geometry, family=t.family)
        try:
            rep = verify(cand)
        except ValueError:
            continue
        if rep.ok:
            out.append(((s, k), cand))
    return out


def _pick_flip(base: Tiling, inner: set[int], sign: int, parity: int | None,
               target: str, family: FamilyId) -> Tiling:
    original = census(base)
    found = None
    for (s, k), cand in flip(base, inner, sign, parity):
        c = census(cand)
        if c == original:
            continue
        if str(c) == target:
            found = cand
            break
        if found is None:
            found = cand
    if found is None:
        raise InternalInconsistencyError(f"no admissible flip of {base.family.tag} found")
    warnings = ()
    if str(census(found)) != target:
        warnings = (f"flip census {census(found)} differs from closed form {target}",)
    # rebuild with fresh vertex ids and re-embed from the seed to check consistency
    fresh = Tiling.from_corners(
        [[(c.angle, c.vertex) for c in tile.corners] for tile in found.tiles],
        family=family, warnings=warnings)
    return _finish(embed(fresh, base.geometry, seed_corner=1))


def _census_str(counts: dict[tuple[int, int, int, int], int]) -> str:
    return str(VertexCensus({VertexType(*k): v for k, v in counts.items() if v}))


def _check_m(m) -> int:
    if int(m) != m or m < 1:
        raise InvalidParameterError(f"flip families need m >= 1, got {m}")
    return int(m)


def flip1_inner(m: int) -> set[int]:
    """Zones 0..m-1 in full and the odd-numbered tiles 1, 3, 5, 7 of zone m."""
    return set(range(8 * m)) | {8 * m + k - 1 for k in (1, 3, 5, 7)}


def flip2_inner(m: int) -> set[int]:
    """Zone 0 minus tiles 1 and 5, zones 1..m-1, and zone m minus tiles 2 and 6."""
    inner = {k - 1 for k in (2, 3, 4, 6, 7, 8)}
    inner |= set(range(8, 8 * m))
    inner |= {8 * m + k - 1 for k in (1, 3, 4, 5, 7, 8)}
    return inner


def gen_three_layer_flip1(m: int) -> Tiling:
    """Reflect a hemisphere of the 3-layer tiling with n = 2m + 1."""
    m = _check_m(m)
    base = gen_three_layer(2 * m + 1)
    target = _census_str({(1, 0, 2, 0): 8 * m + 4, (1, 2 * m + 2, 0, 0): 4,
                          (0, 0, 0, 4): 4 * m + 2, (2, 2, 0, 0): 4 * m})
    return _pick_flip(base, flip1_inner(m), -1, 1, target, FamilyId("three-layer-flip1", n=2 * m + 1, m=m))


def gen_three_layer_flip2(m: int) -> Tiling:
    """Rotate half of the 3-layer tiling with n = 2m + 1 along a 10-gon of a-edges."""
    m = _check_m(m)
    base = gen_three_layer(2 * m + 1)
    target = _census_str({(1, 0, 2, 0): 8 * m + 2, (1, 2 * m + 2, 0, 0): 2, (0, 2 * m, 2, 0): 2,
                          (0, 0, 0, 4): 4 * m + 2, (2, 2, 0, 0): 4 * m + 2})
    return _pick_flip(base, flip2_inner(m), 1, None, target, FamilyId("three-layer-flip2", n=2 * m + 1, m=m))


def subdivision_flip_inner() -> set[int]:
    """Tiles whose delta corner is one of the three vertices of the face x, y, z > 0."""
    tips = {(0, 1), (1, 1), (2, 1)}
    return {i for i, tile in enumerate(subdivision_corners()) if tile[0][1] in tips}


def gen_subdivision_flip() -> Tiling:
    """Flip of the special subdivision, read with the 3-layer names for b/c."""
    base = relabel_bc(gen_subdivision(SUBDIVISION_FLIP_B))
    target = _census_str({(3, 0, 0, 0): 2, (1, 0, 2, 0): 6, (0, 0, 0, 4): 6,
                          (0, 2, 2, 0): 6, (2, 2, 0, 0): 6})
    return _pick_flip(base, subdivision_flip_inner(), -1, 1, target, FamilyId("subdivision-flip"))


def common_quadrilateral_tilings() -> dict[str, Tiling]:
    """The five tilings sharing the quadrilateral of the 3-layer tiling with n = 3."""
    return {
        "subdivision": relabel_bc(gen_subdivision(SUBDIVISION_FLIP_B)),
        "subdivision-flip": gen_subdivision_flip(),
        "three-layer": gen_three_layer(3),
        "three-layer-flip1": gen_three_layer_flip1(1),
        "three-layer-flip2": gen_three_layer_flip2(1),
    }


def family_sweep(n_max: int = 10, m_max: int = 4, d_samples: int = 20, b_samples: int = 10, seed: int = 0):
    """Yield (label, tiling) over every family with small parameters.

    Two-layer D points are drawn from each of the four open strata; the
    subdivision b values are evenly spaced in (0, pi/4), skipping the a = b
    reduction.
    """
    from .moduli import OPEN_STRATA, sample_stratum
    rng = np.random.default_rng(seed)
    for n in range(3, n_max + 1):
        for stratum in OPEN_STRATA:
            for D in sample_stratum(n, stratum, d_samples, rng):
                yield f"two-layer n={n} {stratum.name}", gen_two_layer(n, D)
    for n in range(2, n_max + 1):
        yield f"three-layer n={n}", gen_three_layer(n)
    for m in range(1, m_max + 1):
        yield f"three-layer-flip1 m={m}", gen_three_layer_flip1(m)
        yield f"three-layer-flip2 m={m}", gen_three_layer_flip2(m)
    for b in np.linspace(0.0, PI / 4, b_samples + 2)[1:-1]:
        yield f"subdivision b={b:.4f}", gen_subdivision(float(b))
    yield "subdivision-flip", gen_subdivision_flip()
