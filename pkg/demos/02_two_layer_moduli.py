# # Moduli of the 2-layer family
#
# The free vertex D of the 2-layer tile may sit anywhere on the sphere, but
# only some positions give a simple quadrilateral. classify_two_layer names
# the stratum of D.

import math
from collections import Counter

import numpy as np

from a2bc_tilings import census, classify_two_layer, gen_two_layer
from a2bc_tilings.moduli import OPEN_STRATA, sample_stratum
from a2bc_tilings.quad_solver import TwoLayerConstruction, solve_two_layer

n = 5
rng = np.random.default_rng(1)

# ## Random points
#
# Most of the sphere is self-intersecting; the rest splits into four open triangles.

pts = rng.normal(size=(4000, 3))
pts /= np.linalg.norm(pts, axis=1)[:, None]
print(Counter(classify_two_layer(n, p).name for p in pts))

# ## One point per stratum
#
# The stratum tells us which angle (if any) is reflex.

for stratum in OPEN_STRATA:
    D = sample_stratum(n, stratum, 1, rng)[0]
    g = solve_two_layer(TwoLayerConstruction(n, D))
    print(f"{stratum.name:15s} angles/pi =", np.round(np.array(tuple(g.angles)) / math.pi, 3))

# ## A tiling
#
# Any valid D gives a tiling with 2n tiles. Its census does not depend on D.

D = sample_stratum(n, OPEN_STRATA[0], 1, rng)[0]
t = gen_two_layer(n, D)
print(t.f, "tiles:", census(t))
