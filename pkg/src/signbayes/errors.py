"""Exception types raised by the library."""


class InvalidMeasurementError(ValueError):
    """A measurement with non-positive sigma or a non-finite value."""


class EmptyCampaignError(ValueError):
    """A campaign or campaign file with no measurements."""


class ConvergenceError(RuntimeError):
    """An iterative routine hit its iteration or evaluation cap."""


class CampaignParseError(ValueError):
    """A malformed row in a campaign file.

    ``lineno`` is the 1-based line number in the source file.
    """

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
