"""Labelled quadrilateral tilings and the counting lemmas they must satisfy.

A :class:`Tiling` is a list of tiles.  Each tile lists its four corners
counterclockwise as seen from outside the sphere; corner ``i`` records an
angle label and a vertex id, and side ``i`` (joining corner ``i`` to
``i + 1``) records an edge label.  Half-edges, edges and vertex fans are
derived from the vertex ids alone, so every combinatorial check runs
without coordinates.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import InternalInconsistencyError, MalformedTilingError
from .quad_solver import QuadGeometry
from .sphere_geom import angular_distance, oriented_angle, tangent_toward

ALPHA, BETA, GAMMA, DELTA = "alpha", "beta", "gamma", "delta"
ANGLES = (ALPHA, BETA, GAMMA, DELTA)
ANGLE_LETTER = {ALPHA: "a", BETA: "b", GAMMA: "c", DELTA: "d"}
LETTER_ANGLE = {v: k for k, v in ANGLE_LETTER.items()}

# edge label forced by the two corners it joins
SIDE_LABEL = {
    frozenset((ALPHA, BETA)): "a",
    frozenset((ALPHA, GAMMA)): "a",
    frozenset((BETA, DELTA)): "b",
    frozenset((GAMMA, DELTA)): "c",
}
# corner label forced by its two sides
CORNER_LABEL = {
    ("a", "a"): ALPHA,
    ("a", "b"): BETA,
    ("a", "c"): GAMMA,
    ("b", "c"): DELTA,
}


class Corner(NamedTuple):
    angle: str
    vertex: int


class Tile(NamedTuple):
    corners: tuple[Corner, Corner, Corner, Corner]
    sides: tuple[str, str, str, str]

    def reversed(self) -> "Tile":
        """The same tile listed in the opposite rotational order."""
        cs = self.corners[::-1]
        # side i of the reversed tile joins old corners 3-i and 2-i
        sides = tuple(self.sides[(2 - i) % 4] for i in range(4))
        return Tile(cs, sides)


@dataclass(frozen=True)
class FamilyId:
    """Which member of the classification a tiling belongs to."""

    tag: str
    n: int | None = None
    m: int | None = None
    b: float | None = None
    D: tuple[float, float, float] | None = None

    TAGS = ("two-layer", "three-layer", "three-layer-flip1", "three-layer-flip2",
            "subdivision", "subdivision-flip", "custom")

    def as_dict(self) -> dict:
        return {k: v for k, v in (("tag", self.tag), ("n", self.n), ("m", self.m),
                                  ("b", self.b), ("D", list(self.D) if self.D else None))
                if v is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilyId":
        D = d.get("D")
        return cls(d["tag"], d.get("n"), d.get("m"), d.get("b"), tuple(D) if D else None)


@dataclass(frozen=True, eq=False)
class Tiling:
    tiles: tuple[Tile, ...]
    positions: dict[int, tuple[float, float, float]] | None = None
    geometry: QuadGeometry | None = None
    family: FamilyId = FamilyId("custom")
    warnings: tuple[str, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, Tiling):
            return NotImplemented
        return (self.tiles == other.tiles and self.positions == other.positions
                and self.geometry == other.geometry and self.family == other.family)

    __hash__ = None

    # ------------------------------------------------------------ builders
    @classmethod
    def from_corners(cls, tiles, **kwargs) -> "Tiling":
        """Build from tiles given as four (angle, vertex_key) pairs each.

        Vertex keys may be any hashable; they are renumbered 0, 1, ... in
        order of first appearance.  Side labels are inferred from the corner
        labels, and a corner pair with no admissible edge raises.
        """
        ids: dict = {}
        out = []
        for t, corners in enumerate(tiles):
            cs = tuple(Corner(angle, ids.setdefault(key, len(ids))) for angle, key in corners)
            if len(cs) != 4:
                raise MalformedTilingError(f"tile {t} has {len(cs)} corners")
            sides = []
            for i in range(4):
                pair = frozenset((cs[i].angle, cs[(i + 1) % 4].angle))
                if pair not in SIDE_LABEL:
                    raise MalformedTilingError(f"tile {t}: no edge joins {sorted(pair)}")
                sides.append(SIDE_LABEL[pair])
            out.append(Tile(cs, tuple(sides)))
        positions = kwargs.pop("positions", None)
        if positions is not None:
            positions = {ids[k]: tuple(map(float, p)) for k, p in positions.items() if k in ids}
        return cls(tuple(out), positions=positions, **kwargs)

    def with_embedding(self, positions, geometry: QuadGeometry | None = None) -> "Tiling":
        pos = {int(v): tuple(float(x) for x in p) for v, p in positions.items()}
        return replace(self, positions=pos, geometry=geometry or self.geometry)

    def relabel_edge(self, tile: int, side: int, label: str) -> "Tiling":
        """Change the label of one edge (both of its half-edges); corner labels stay."""
        twin = self.twin[(tile, side)]
        tiles = list(self.tiles)
        for t, i in ((tile, side), twin):
            sides = list(tiles[t].sides)
            sides[i] = label
            tiles[t] = Tile(tiles[t].corners, tuple(sides))
        return replace(self, tiles=tuple(tiles))

    # ----------------------------------------------------------- structure
    @property
    def f(self) -> int:
        return len(self.tiles)

    @cached_property
    def vertices(self) -> list[int]:
        return sorted({c.vertex for tile in self.tiles for c in tile.corners})

    @cached_property
    def corners_at(self) -> dict[int, list[tuple[int, int]]]:
        out = defaultdict(list)
        for t, tile in enumerate(self.tiles):
            for i, c in enumerate(tile.corners):
                out[c.vertex].append((t, i))
        return dict(out)

    def half_edge(self, t: int, i: int) -> tuple[int, int]:
        cs = self.tiles[t].corners
        return cs[i].vertex, cs[(i + 1) % 4].vertex

    @cached_property
    def twin(self) -> dict[tuple[int, int], tuple[int, int]]:
        by_ends = defaultdict(list)
        for t in range(self.f):
            for i in range(4):
                by_ends[self.half_edge(t, i)].append((t, i))
        twin = {}
        for (u, v), hs in by_ends.items():
            back = by_ends.get((v, u), [])
            if len(hs) != 1 or len(back) != 1:
                raise MalformedTilingError(
                    f"half-edge {u}->{v} has {len(hs)} copies and {len(back)} opposite partners")
            twin[hs[0]] = back[0]
        return twin

    @cached_property
    def edges(self) -> list[tuple[tuple[int, int], tuple[int, int], str]]:
        """Each edge once, as (half-edge, twin half-edge, label of the first)."""
        out = []
        for h, g in sorted(self.twin.items()):
            if h < g:
                out.append((h, g, self.tiles[h[0]].sides[h[1]]))
        return out

    @cached_property
    def degrees(self) -> dict[int, int]:
        return {v: len(cs) for v, cs in self.corners_at.items()}

    def half_edge_degrees(self) -> dict[int, int]:
        """Degree counted from outgoing half-edges instead of corner records."""
        out = Counter(self.half_edge(t, i)[0] for t in range(self.f) for i in range(4))
        return dict(out)

    def vertex_fan(self, v: int) -> list[tuple[int, int]]:
        """Corners around v in rotational order, walking across shared edges."""
        start = self.corners_at[v][0]
        fan = [start]
        t, i = start
        while True:
            t2, j = self.twin[(t, i)]
            t, i = t2, (j + 1) % 4
            if (t, i) == start:
                return fan
            fan.append((t, i))
            if len(fan) > 4 * self.f:
                raise MalformedTilingError(f"corner walk around vertex {v} does not close")

    def vertex_angles(self, v: int) -> Counter:
        return Counter(self.tiles[t].corners[i].angle for t, i in self.corners_at[v])

    def vertex_type(self, v: int) -> "VertexType":
        cnt = self.vertex_angles(v)
        return VertexType(cnt[ALPHA], cnt[BETA], cnt[GAMMA], cnt[DELTA])

    def position(self, v: int) -> np.ndarray:
        return np.array(self.positions[v])

    def corner_measure(self, t: int, i: int) -> float:
        """Interior angle of corner i of tile t measured from the embedding."""
        tile = self.tiles[t]
        V = self.position(tile.corners[i].vertex)
        U = self.position(tile.corners[i - 1].vertex)
        W = self.position(tile.corners[(i + 1) % 4].vertex)
        d_next = tangent_toward(V, W)
        d_prev = tangent_toward(V, U)
        if self.geometry is not None:
            if self.geometry.edges[tile.sides[i]] > math.pi:
                d_next = -d_next
            if self.geometry.edges[tile.sides[i - 1]] > math.pi:
                d_prev = -d_prev
        return oriented_angle(V, d_next, d_prev)


def relabel_bc(t: Tiling) -> Tiling:
    """Exchange the names b/c and beta/gamma throughout a tiling."""
    swap_a = {BETA: GAMMA, GAMMA: BETA}
    swap_e = {"b": "c", "c": "b"}
    tiles = tuple(
        Tile(tuple(Corner(swap_a.get(c.angle, c.angle), c.vertex) for c in tile.corners),
             tuple(swap_e.get(s, s) for s in tile.sides))
        for tile in t.tiles)
    geom = t.geometry.swap_bc() if t.geometry is not None else None
    return replace(t, tiles=tiles, geometry=geom)


# ---------------------------------------------------------------- vertices

class VertexType(NamedTuple):
    """Exponents (k, l, m, n) of alpha^k beta^l gamma^m delta^n at one vertex."""

    k: int
    l: int
    m: int
    n: int

    @property
    def degree(self) -> int:
        return self.k + self.l + self.m + self.n

    def satisfies_parity(self) -> bool:
        return self.l % 2 == self.m % 2 == self.n % 2

    def angle_sum(self, angles) -> float:
        return sum(e * x for e, x in zip(self, angles))

    def sort_key(self):
        return (self.degree, tuple(self))

    def __str__(self) -> str:
        parts = []
        for letter, e in zip("abcd", self):
            if e == 1:
                parts.append(letter)
            elif e > 1:
                parts.append(f"{letter}^{e}")
        return "".join(parts)

    @classmethod
    def parse(cls, s: str) -> "VertexType":
        exps = dict.fromkeys("abcd", 0)
        pos = 0
        for mt in re.finditer(r"([abcd])(?:\^(\d+))?", s):
            if mt.start() != pos:
                raise ValueError(f"cannot parse vertex type {s!r}")
            exps[mt.group(1)] += int(mt.group(2) or 1)
            pos = mt.end()
        if pos != len(s) or not s:
            raise ValueError(f"cannot parse vertex type {s!r}")
        return cls(exps["a"], exps["b"], exps["c"], exps["d"])


@dataclass(frozen=True)
class VertexCensus:
    counts: dict[VertexType, int]
    f: int | None = None

    def totals(self) -> tuple[int, int, int, int]:
        return tuple(sum(mult * vt[i] for vt, mult in self.counts.items()) for i in range(4))

    def ordered(self) -> list[tuple[VertexType, int]]:
        return sorted(self.counts.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self) -> str:
        return "T(" + ", ".join(f"{mult} {vt}" for vt, mult in self.ordered()) + ")"

    @classmethod
    def parse(cls, s: str, f: int | None = None) -> "VertexCensus":
        s = s.strip()
        if not (s.startswith("T(") and s.endswith(")")):
            raise ValueError(f"census strings look like 'T(6 bcd, 2 a^3)', got {s!r}")
        counts: Counter = Counter()
        for item in s[2:-1].split(","):
            mult, vt = item.split()
            counts[VertexType.parse(vt)] += int(mult)
        return cls(dict(counts), f)

    def __eq__(self, other):
        return isinstance(other, VertexCensus) and self.counts == other.counts


def census(t: Tiling) -> VertexCensus:
    return VertexCensus(dict(Counter(t.vertex_type(v) for v in t.vertices)), t.f)


# ---------------------------------------------------------------- verify

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    embedded: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self) -> dict:
        return {
            "ok": self.ok,
            "mode": "embedded" if self.embedded else "combinatorial only",
            "checks": {c.name: c.passed for c in self.checks},
        }


def _arrangement_ok(tile: Tile) -> bool:
    sides = tile.sides
    if sorted(sides) != ["a", "a", "b", "c"]:
        return False
    # the two a-edges must be adjacent and the corner labels forced by the sides
    for i, c in enumerate(tile.corners):
        pair = tuple(sorted((sides[i - 1], sides[i])))
        if CORNER_LABEL.get(pair) != c.angle:
            return False
    return True


def verify(t: Tiling, tol: float = 1e-8) -> VerificationReport:
    """Run every counting, parity and (when embedded) metric check."""
    twin = t.twin  # raises MalformedTilingError when half-edges do not pair
    rep = VerificationReport(embedded=t.positions is not None)
    add = rep.checks.append
    f, v, e = t.f, len(t.vertices), len(t.edges)
    deg = t.degrees
    vk = Counter(deg.values())

    add(Check("euler", v - e + f == 2, f"v={v} e={e} f={f}"))
    rhs_f = 6 + sum((k - 3) * c for k, c in vk.items() if k >= 4)
    add(Check("f-count", f == rhs_f, f"f={f}, 6+sum (k-3)v_k={rhs_f}"))
    rhs_v3 = 8 + sum((k - 4) * c for k, c in vk.items() if k >= 5)
    add(Check("v3-count", vk.get(3, 0) == rhs_v3, f"v3={vk.get(3, 0)}, 8+sum (k-4)v_k={rhs_v3}"))
    add(Check("f-even", f % 2 == 0, f"f={f}"))
    nb = sum(1 for _, _, lab in t.edges if lab == "b")
    add(Check("b-edges", 2 * nb == f, f"{nb} b-edges for f={f}"))
    add(Check("min-degree", min(deg.values()) >= 3, f"min degree {min(deg.values())}"))
    fans_ok = all(len(t.vertex_fan(x)) == deg[x] for x in t.vertices)
    add(Check("vertex-fans", fans_ok and t.half_edge_degrees() == deg,
              "each vertex is one cycle of corners"))
    bad_parity = [x for x in t.vertices if not t.vertex_type(x).satisfies_parity()]
    add(Check("parity", not bad_parity, f"vertices failing parity: {bad_parity[:5]}"))
    bad_tiles = [i for i, tile in enumerate(t.tiles) if not _arrangement_ok(tile)]
    bad_pairs = [h for h, g in twin.items() if t.tiles[h[0]].sides[h[1]] != t.tiles[g[0]].sides[g[1]]]
    add(Check("arrangement", not bad_tiles and not bad_pairs,
              f"tiles with bad labels: {bad_tiles[:5]}; mismatched edges: {len(bad_pairs) // 2}"))

    g = t.geometry
    if g is not None:
        worst = max(abs(t.vertex_type(x).angle_sum(g.angles) - 2 * math.pi) for x in t.vertices)
        add(Check("angle-sum", worst < tol, f"max |vertex angle sum - 2pi| = {worst:.3e}"))
    if t.positions is not None and g is not None:
        worst_sum, worst_corner = 0.0, 0.0
        for x in t.vertices:
            total = 0.0
            for ti, ci in t.corners_at[x]:
                ang = t.corner_measure(ti, ci)
                total += ang
                worst_corner = max(worst_corner, abs(ang - g.angles[t.tiles[ti].corners[ci].angle]))
            worst_sum = max(worst_sum, abs(total - 2 * math.pi))
        add(Check("embedded-angles", worst_sum < tol and worst_corner < tol,
                  f"max |measured sum - 2pi| = {worst_sum:.3e}, max corner error = {worst_corner:.3e}"))
        worst_len = 0.0
        for (ti, si), _, lab in t.edges:
            u, w = t.half_edge(ti, si)
            L = g.edges[lab]
            worst_len = max(worst_len, abs(angular_distance(t.position(u), t.position(w))
                                           - min(L, 2 * math.pi - L)))
        add(Check("embedded-lengths", worst_len < tol, f"max edge length error = {worst_len:.3e}"))
    return rep


# ---------------------------------------------------------- special tile

class SpecialTile(NamedTuple):
    tile: int
    signature: str
    kind: str


def _special_class(sig):
    d1, d2, d3, d4 = sig
    head = (d1, d2, d3)
    if head == (3, 3, 3):
        return 0, "333d"
    if head == (3, 3, 4) and 4 <= d4 <= 11:
        return 1, "334d"
    if head == (3, 3, 5) and 5 <= d4 <= 7:
        return 2, "335d"
    if head == (3, 4, 4) and 4 <= d4 <= 5:
        return 3, "344d"
    return None


def special_tile(t: Tiling) -> SpecialTile:
    """Earliest special tile: class order 333d, 334d, 335d, 344d, then smallest d."""
    best = None
    for i, tile in enumerate(t.tiles):
        sig = tuple(sorted(t.degrees[c.vertex] for c in tile.corners))
        cls = _special_class(sig)
        if cls is None:
            continue
        key = (cls[0], sig[3], i)
        if best is None or key < best[0]:
            best = (key, SpecialTile(i, "".join(map(str, sig)), cls[1]))
    if best is None:
        raise InternalInconsistencyError("no special tile: the tiling cannot be a sphere tiling")
    return best[1]


# --------------------------------------------------------------- balance

class BalanceResult(NamedTuple):
    passed: bool
    clause: str
    witness: str


def balance_check(c: VertexCensus) -> BalanceResult:
    totals = c.totals()
    f = c.f if c.f is not None else totals[0]
    if any(x != f for x in totals):
        return BalanceResult(False, "i", f"per-angle totals {totals} differ from f={f}")
    names = (("beta", 1), ("gamma", 2), ("delta", 3))
    present = {name: any(vt[i] >= 2 for vt in c.counts) for name, i in names}
    if any(present.values()):
        missing = [name for name, ok in present.items() if not ok]
        if missing:
            return BalanceResult(False, "ii", ", ".join(f"{m}^2 missing" for m in missing))
        return BalanceResult(True, "ii", "beta^2, gamma^2 and delta^2 vertices all present")
    expected = {VertexType(0, 1, 1, 1): f, VertexType(f // 2, 0, 0, 0): 2}
    if f % 2 == 0 and c.counts == expected:
        return BalanceResult(True, "iii", f"census is {f} bcd + 2 a^{f // 2}")
    return BalanceResult(False, "iii", "no squared beta/gamma/delta vertex yet census is not f bcd + 2 a^(f/2)")
