# # Saving and drawing a tiling
#
# Tilings go out as JSON (exact float round trip) and as stereographic SVG.

from pathlib import Path

from a2bc_tilings import from_json, gen_three_layer_flip1, render_svg, to_json

t = gen_three_layer_flip1(1)

# ## JSON
#
# The document carries the tiles, the quadrilateral, coordinates and the census.

data = to_json(t)
print(len(data), "bytes;", "round trip exact:", from_json(data) == t)

# ## SVG
#
# Edges are drawn by label: a thin, b thick, c dashed.

out = Path("flip1_m1.svg")
out.write_bytes(render_svg(t))
print("wrote", out)
