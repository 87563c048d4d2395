"""Enumerate vertex types whose angles add up to a full turn.

Angles may be floats in radians, matched with an absolute tolerance, or
:class:`fractions.Fraction` multiples of pi, matched exactly.  The edge
constraints applied are the parity rule (beta, gamma, delta counts share one
parity) and the rule that alpha and delta never meet at a vertex without a
beta or gamma between them.  Enumeration over-approximates what a tiling
can realise: it says nothing about how the angles are arranged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import VertexType
from .errors import BoundExceededError, InvalidParameterError
from .quad_solver import AngleQuad


@dataclass(frozen=True)
class AvcConstraints:
    """Angle values plus the search limits.

    ``exact_pi`` holds the angles as rational multiples of pi when known;
    then matching is exact and ``tol`` is ignored.
    """

    angles: AngleQuad
    tol: float = 1e-9
    max_total_degree: int = 60
    exact_pi: tuple[Fraction, Fraction, Fraction, Fraction] | None = None

    @classmethod
    def from_pi_fractions(cls, fracs: Sequence, **kwargs) -> "AvcConstraints":
        """Build from rational multiples of pi, e.g. ``("1/2", "1/2", "3/4", "1/2")``."""
        fr = tuple(Fraction(x) for x in fracs)
        if len(fr) != 4:
            raise InvalidParameterError("need four angles")
        quad = AngleQuad(*(float(x) * math.pi for x in fr))
        return cls(quad, exact_pi=fr, **kwargs)


def admissible(vt: VertexType) -> bool:
    """Degree at least 3, parity, and no alpha-delta vertex without beta or gamma."""
    k, l, m, n = vt
    if vt.degree < 3 or not vt.satisfies_parity():
        return False
    if l == 0 and m == 0 and k > 0 and n > 0:
        return False
    return True


def _bounds(c: AvcConstraints) -> tuple[int, ...]:
    vals = tuple(c.angles)
    if min(vals) <= 0:
        raise InvalidParameterError("angles must be positive")
    need = math.ceil(2 * math.pi / min(vals) - 1e-9)
    if need > c.max_total_degree:
        raise BoundExceededError(
            f"smallest angle needs degree up to {need}, above max_total_degree={c.max_total_degree}")
    return tuple(int(math.floor(2 * math.pi / x + 1e-9)) for x in vals)


def _matcher(c: AvcConstraints):
    if c.exact_pi is not None:
        fr = c.exact_pi
        return lambda e: sum(x * y for x, y in zip(e, fr)) == 2
    vals = tuple(c.angles)
    return lambda e: abs(sum(x * y for x, y in zip(e, vals)) - 2 * math.pi) <= c.tol


def enumerate_types(c: AvcConstraints) -> list[VertexType]:
    """All admissible vertex types with angle sum 2pi, by degree then exponents."""
    kmax, lmax, mmax, nmax = _bounds(c)
    a = tuple(c.angles)
    full = 2 * math.pi + max(c.tol, 1e-9)
    hit = _matcher(c)
    out = []
    for k in range(kmax + 1):
        sk = k * a[0]
        for l in range(lmax + 1):
            sl = sk + l * a[1]
            if sl > full:
                break
            for m in range(mmax + 1):
                sm = sl + m * a[2]
                if sm > full:
                    break
                # the delta count is pinned down by the remaining angle
                rest = (2 * math.pi - sm) / a[3]
                for n in {math.floor(rest), math.ceil(rest)}:
                    if n < 0:
                        continue
                    vt = VertexType(k, l, m, n)
                    if admissible(vt) and hit(vt):
                        out.append(vt)
    return sorted(set(out), key=VertexType.sort_key)


def enumerate_types_naive(c: AvcConstraints) -> list[VertexType]:
    """Reference implementation: plain quadruple loop up to max_total_degree."""
    D = c.max_total_degree
    hit = _matcher(c)
    out = []
    for k in range(D + 1):
        for l in range(D + 1 - k):
            for m in range(D + 1 - k - l):
                for n in range(D + 1 - k - l - m):
                    vt = VertexType(k, l, m, n)
                    if admissible(vt) and hit(vt):
                        out.append(vt)
    return sorted(out, key=VertexType.sort_key)


def degree3_catalog() -> list[VertexType]:
    """Degree-3 types allowed by matching edge lengths around the vertex."""
    return [VertexType(*e) for e in ((0, 1, 1, 1), (1, 0, 2, 0), (1, 2, 0, 0), (3, 0, 0, 0))]


def degree4_catalog() -> list[VertexType]:
    """Degree-4 types allowed by matching edge lengths; alpha^2 delta^2 is excluded."""
    types = [(4, 0, 0, 0), (0, 4, 0, 0), (0, 0, 4, 0), (0, 0, 0, 4),
             (2, 2, 0, 0), (2, 0, 2, 0), (0, 2, 2, 0), (0, 2, 0, 2), (0, 0, 2, 2)]
    return sorted((VertexType(*e) for e in types), key=VertexType.sort_key)
