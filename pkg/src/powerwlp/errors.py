"""Exception types shared across the package."""


class WlpError(Exception):
    """Base class for all errors raised by powerwlp."""


class IndexOutOfRange(WlpError, IndexError):
    pass


class PreconditionViolated(WlpError, ValueError):
    """A Cremona step was requested where some touched multiplicity would go negative."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"multiplicity at position {index} would become negative")


class NotApplicable(WlpError, ValueError):
    pass


class NotStandardForm(WlpError, ValueError):
    pass


class HypothesesFail(WlpError, ValueError):
    pass


class TooManyPoints(WlpError, ValueError):
    pass


class UnsupportedShape(WlpError, ValueError):
    pass


class DegenerateSample(WlpError, RuntimeError):
    pass


class UnknownDimension(WlpError, RuntimeError):
    """No symbolic method applies and the oracle fallback was disabled."""
