"""Exception hierarchy shared by every module of the package."""


class GFusionError(Exception):
    """Base class for all errors raised by gfusion."""


class AllVectorsNumericallyZero(GFusionError, ValueError):
    pass


class ConvergenceFailure(GFusionError, ArithmeticError):
    pass


class SingularOperator(GFusionError, ArithmeticError):
    pass


class ShapeMismatch(GFusionError, ValueError):
    pass


class MeasureSpaceMismatch(GFusionError, ValueError):
    pass


class UnknownAtomId(GFusionError, KeyError):
    pass


class NotAFrame(GFusionError):
    """The family is Bessel only: the lower frame bound is below the invertibility floor."""


class NotParseval(GFusionError):
    pass


class NotTight(GFusionError):
    pass


class NotAlternateDual(GFusionError):
    pass


class NonRealWeights(GFusionError, ValueError):
    pass


class InvalidConfig(GFusionError, ValueError):
    pass


class GenerationFailed(GFusionError):
    pass


class FrameFormatError(GFusionError, ValueError):
    """A frame or report document does not follow the JSON schema."""
