"""Exception types shared across the package."""


class SlopeFactorError(Exception):
    """Base class for all structured errors raised by this package."""


class ModulusNotPrime(SlopeFactorError):
    pass


class ZeroPolynomial(SlopeFactorError):
    pass


class ParseError(SlopeFactorError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "line %d, col %d: %s" % (line, col if col is not None else 0, message)
        super().__init__(message)
        self.line = line
        self.col = col


class DegeneratePolygon(SlopeFactorError):
    pass


class EdgeNotOnPolygon(SlopeFactorError):
    pass


class NotInApl(SlopeFactorError):
    pass


class NotAUnit(SlopeFactorError):
    pass


class BadLeadingValuation(SlopeFactorError):
    pass


class NotCoprime(SlopeFactorError):
    pass


class InitMismatch(SlopeFactorError):
    pass


class NotLambdaMonic(SlopeFactorError):
    pass


class DegenerateEdge(SlopeFactorError):
    pass


class DegenerateInput(SlopeFactorError):
    pass


class PrecisionTooLow(SlopeFactorError):
    pass


class SingleYStratum(SlopeFactorError):
    pass


class NotAPartition(SlopeFactorError):
    pass


class NotSeparable(SlopeFactorError):
    pass


class NotPrimitive(SlopeFactorError):
    pass


class MinimallyDegenerate(SlopeFactorError):
    pass
