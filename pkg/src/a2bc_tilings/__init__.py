"""Edge-to-edge tilings of the sphere by congruent a^2bc quadrilaterals.

The quadrilateral has edges a, a, b, c in cyclic order.  Up to symmetry
its tilings form a 2-layer earth map family, a 1-parameter family of
octahedron subdivisions, and a sequence of 3-layer earth map tilings,
plus three flip modifications of special members.  This package builds
and embeds all of them, checks them against the counting identities, and
exports them as JSON or SVG.
"""

from .avc import AvcConstraints, degree3_catalog, degree4_catalog, enumerate_types
from .combinatorics import (
    FamilyId,
    Tiling,
    VertexCensus,
    VertexType,
    balance_check,
    census,
    special_tile,
    verify,
)
from .generators import (
    common_quadrilateral_tilings,
    embed,
    gen_subdivision,
    gen_subdivision_flip,
    gen_three_layer,
    gen_three_layer_flip1,
    gen_three_layer_flip2,
    gen_two_layer,
)
from .io_export import from_json, render_svg, to_json
from .moduli import ReductionTag, TwoLayerRegion, classify_two_layer, detect_reduction, subdivision_moduli
from .quad_solver import (
    AngleQuad,
    EdgeTriple,
    QuadGeometry,
    TwoLayerConstruction,
    closure_residual,
    solve_subdivision,
    solve_three_layer,
    solve_two_layer,
)
from .sphere_geom import SpherePoint

__version__ = "0.1.0"

__all__ = [
    "AvcConstraints",
    "degree3_catalog",
    "degree4_catalog",
    "enumerate_types",
    "FamilyId",
    "Tiling",
    "VertexCensus",
    "VertexType",
    "balance_check",
    "census",
    "special_tile",
    "verify",
    "common_quadrilateral_tilings",
    "embed",
    "gen_subdivision",
    "gen_subdivision_flip",
    "gen_three_layer",
    "gen_three_layer_flip1",
    "gen_three_layer_flip2",
    "gen_two_layer",
    "from_json",
    "render_svg",
    "to_json",
    "ReductionTag",
    "TwoLayerRegion",
    "classify_two_layer",
    "detect_reduction",
    "subdivision_moduli",
    "AngleQuad",
    "EdgeTriple",
    "QuadGeometry",
    "TwoLayerConstruction",
    "closure_residual",
    "solve_subdivision",
    "solve_three_layer",
    "solve_two_layer",
    "SpherePoint",
]
