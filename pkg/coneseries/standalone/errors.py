class ConeSeriesError(ValueError):
    """
    Base class of all domain errors raised by coneseries.

    The class attribute ``code`` is the stable error name which the command line interface prints as
    ``{"error": code, "detail": message}``.
    """

    code = "ConeSeriesError"


class UsageError(ConeSeriesError):
    code = "UsageError"


class ZeroPolynomial(ConeSeriesError):
    code = "ZeroPolynomial"


class NotSimpleRoot(ConeSeriesError):
    code = "NotSimpleRoot"


class NotARoot(ConeSeriesError):
    code = "NotARoot"


class DimensionUnsupported(ConeSeriesError):
    code = "DimensionUnsupported"


class DimensionMismatch(ConeSeriesError):
    code = "DimensionMismatch"


class NotStronglyConvex(ConeSeriesError):
    code = "NotStronglyConvex"


class IntersectionNotFullDimensional(ConeSeriesError):
    code = "IntersectionNotFullDimensional"


class NotAVertex(ConeSeriesError):
    code = "NotAVertex"


class NoSeparator(ConeSeriesError):
    code = "NoSeparator"


class ConeNotInHalfSpace(ConeSeriesError):
    code = "ConeNotInHalfSpace"


class BadBasis(ConeSeriesError):
    code = "BadBasis"


class NonPositiveOmega(ConeSeriesError):
    code = "NonPositiveOmega"


class EmptySupport(ConeSeriesError):
    code = "EmptySupport"


class NotWellOrdered(ConeSeriesError):
    code = "NotWellOrdered"


class NoMinimum(ConeSeriesError):
    code = "NoMinimum"


class LevelNotFullyKnown(ConeSeriesError):
    code = "LevelNotFullyKnown"


class HorizonExceedsKnowledge(ConeSeriesError):
    code = "HorizonExceedsKnowledge"


class HorizonExceedsCoefficientKnowledge(ConeSeriesError):
    code = "HorizonExceedsCoefficientKnowledge"


class DegenerateInitialForm(ConeSeriesError):
    code = "DegenerateInitialForm"


class NotSquarefree(ConeSeriesError):
    code = "NotSquarefree"


class NonpositiveStep(ConeSeriesError):
    code = "NonpositiveStep"


class PreconditionLocalized(ConeSeriesError):
    code = "PreconditionLocalized"


class Inconclusive(ConeSeriesError):
    code = "Inconclusive"


class NoBlockedIndex(ConeSeriesError):
    code = "NoBlockedIndex"


class WindowTooLarge(ConeSeriesError):
    code = "WindowTooLarge"
