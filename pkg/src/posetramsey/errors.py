"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Raised when an operation receives arguments outside its domain."""


class InfeasibleSizeError(ParameterError):
    """Raised when an exhaustive enumeration would exceed its size cap."""


class CertificateParseError(ValueError):
    pass


class VerificationError(ValueError):
    """A certificate parsed fine but does not certify what it claims."""

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict
