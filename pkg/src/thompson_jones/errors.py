"""Exception hierarchy shared by the engines and the command line."""


class ThompsonError(ValueError):
    """Base class for every domain error raised by this package."""


class ValidationError(ThompsonError):
    """Malformed tree, permutation, matrix or other input data."""


class CompositionError(ThompsonError):
    """Forests whose arities do not match were composed."""


class PrecisionError(ThompsonError):
    """A binary word is too short to locate the leaf it belongs to."""


class UnsupportedFlavor(ThompsonError):
    """The operation is not defined for this flavor of element."""


class GrowthError(ThompsonError):
    """A computation would exceed a configured size bound."""


class NotFound(ThompsonError):
    """A bounded search finished without a result."""


class ParseError(ValueError):
    """Text input could not be parsed.

    ``position`` is the 0-based offset into the original text where the
    problem was detected (``None`` when it applies to the whole input).
    """

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
