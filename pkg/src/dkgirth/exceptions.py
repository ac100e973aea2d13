class DkGirthError(Exception):
    """Base class for errors raised by this package."""


# every PaperFalsified ever constructed in this process, oldest first
falsification_log: list[str] = []


class PaperFalsified(DkGirthError):
    """A construction that is proven to succeed did not.

    Raised when a lifted circuit fails verification, an identity that holds
    for all inputs evaluates to nonzero, or derived girth bounds cross.
    Distinct from user error so callers can alert on it specifically.
    """

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}
        falsification_log.append(message)


class LiftPreconditionError(DkGirthError, ValueError):
    """The input certificate does not have the shape a lifting rule needs."""
