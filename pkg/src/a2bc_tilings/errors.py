"""Exception hierarchy shared by every module of the package."""


class TilingError(Exception):
    """Base class for all errors raised by a2bc_tilings."""


class DegenerateArcError(TilingError, ValueError):
    """Two points are coincident or antipodal, so the great circle is undefined."""


class InfeasibleTriangleError(TilingError, ValueError):
    """Three side lengths violate the spherical triangle inequalities."""


class PointAtInfinityError(TilingError, ValueError):
    """A point sits on the centre of a stereographic projection."""


class InvalidParameterError(TilingError, ValueError):
    """A family parameter (n, m, f, ...) is outside its admissible range."""


class OutOfModuliError(TilingError, ValueError):
    """A parameter lies outside the moduli of its family."""

    def __init__(self, message, region=None):
        super().__init__(message)
        self.region = region


class ReductionError(TilingError, ValueError):
    """The quadrilateral degenerates to a different edge type (a2b2, a3b, a4)."""

    def __init__(self, message, tag=None):
        super().__init__(message)
        self.tag = tag


class DegenerateQuadrilateralError(TilingError, ValueError):
    pass


class MalformedTilingError(TilingError, ValueError):
    """Half-edges cannot be paired, or the corner data is inconsistent."""


class InternalInconsistencyError(TilingError, RuntimeError):
    pass


class EmbeddingError(TilingError, RuntimeError):
    """Propagating coordinates through the tiling produced conflicting positions."""


class BoundExceededError(TilingError, ValueError):
    pass


class UnverifiedTilingError(TilingError, ValueError):
    pass


class RenderError(TilingError, ValueError):
    pass
