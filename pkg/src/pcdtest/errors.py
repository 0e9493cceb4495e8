"""Exception and warning types shared across the package."""


class PCDError(Exception):
    """Base class for all package errors."""


class InvalidParam(PCDError, ValueError):
    pass


class TooFewPoints(PCDError, ValueError):
    pass


class DegenerateInput(PCDError, ValueError):
    pass


class OutsideTriangle(PCDError, ValueError):
    pass


class DegenerateVariance(PCDError, ValueError):
    pass


class InsufficientInteriorPoints(PCDError, ValueError):
    pass


class InvalidWeights(PCDError, ValueError):
    pass


class ParseError(PCDError, ValueError):
    pass


class CocircularAmbiguity(UserWarning):
    """Four or more reference points are (nearly) cocircular.

    The triangulation is still returned, but the choice of diagonal in the
    affected quadrilateral is arbitrary (deterministic for a given input).
    """
