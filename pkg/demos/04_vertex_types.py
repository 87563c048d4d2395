# # Which vertices can occur?
#
# Given the four angles, a vertex is a multiset of them summing to 2 pi. The
# enumerator lists every such multiset that also satisfies the b/c parity rule.

from a2bc_tilings.avc import AvcConstraints, enumerate_types

# ## Angles as fractions of pi
#
# With f tiles the alpha^2 beta^2 case has angles 1 - 8/f, 8/f, 1/2 + 4/f, 1/2.

for f in (16, 24, 28):
    fr = (f"{f - 8}/{f}", f"8/{f}", f"{f + 8}/{2 * f}", "1/2")
    types = enumerate_types(AvcConstraints.from_pi_fractions(fr))
    print(f"f={f}:", ", ".join(str(v) for v in types))
