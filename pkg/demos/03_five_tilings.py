# # Five tilings, one quadrilateral
#
# The n = 3 three-layer tile and the special subdivision tile coincide. That
# quadrilateral tiles the sphere in five different ways.

from a2bc_tilings import census, common_quadrilateral_tilings, special_tile, verify

tilings = common_quadrilateral_tilings()

# ## Censuses
#
# All five have 24 tiles; the vertex types tell them apart.

for name, t in tilings.items():
    print(f"{name:18s} f={t.f}  {census(t)}")

# ## Checks and special tiles
#
# Every tiling passes the combinatorial and metric checks. The special tile
# signature lists the degrees around the first tile of the best class.

for name, t in tilings.items():
    rep = verify(t)
    s = special_tile(t)
    print(f"{name:18s} ok={rep.ok}  special tile {s.signature} ({s.kind})")
