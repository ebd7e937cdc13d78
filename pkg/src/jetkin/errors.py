"""Exception types shared across the package."""


class PureDualNotInvertible(ZeroDivisionError):
    """Division/inversion of a jet whose real part is zero."""


class DomainError(ValueError):
    """Elementary function evaluated outside its domain (offending value in args)."""


class DimensionMismatch(ValueError):
    """Vector arguments of incompatible dimensions."""


class IndexOutOfRange(IndexError):
    """Coordinate index outside 1..m."""


class EmptyIndexList(ValueError):
    """Partial-derivative request with no indices."""


class MoreThanFourIndices(ValueError):
    """Partial-derivative request above rank 4."""


class DimensionCapExceeded(ValueError):
    """Brute-force contraction refused: dimension above the configured cap."""


class NonUnitAxis(ValueError):
    """Rotation axis is not unit length."""


class InsufficientRateOrder(ValueError):
    """Rate arrays missing or of the wrong shape for the requested state."""
