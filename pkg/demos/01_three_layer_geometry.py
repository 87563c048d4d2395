# # The 3-layer quadrilateral
#
# Each 3-layer earth map tiling has one quadrilateral, fixed by n. Its edge
# a is a root of a cubic, and b follows from a + 2b = pi.

import math

import numpy as np

from a2bc_tilings import solve_three_layer
from a2bc_tilings.quad_solver import closure_residual, three_layer_cubic

# ## A single solve
#
# Edges and angles in units of pi for n = 2 and n = 3.

for n in (2, 3):
    g = solve_three_layer(n)
    print(f"n={n}  edges/pi =", np.round(np.array(tuple(g.edges)) / math.pi, 4),
          " angles/pi =", np.round(np.array(tuple(g.angles)) / math.pi, 4))

# ## How good is the root?
#
# The cubic residual and the closure of the walk around the tile, for a range of n.

for n in (2, 5, 10, 50):
    g = solve_three_layer(n)
    print(f"n={n:3d}  cubic {three_layer_cubic(n, g.edges.a):+.1e}  closure {closure_residual(g):.1e}")

# ## Large n
#
# As n grows, a creeps up to pi/5.

for n in (10, 1000, 10**6):
    print(f"n={n:>7}  a - pi/5 = {solve_three_layer(n).edges.a - math.pi / 5:+.3e}")
